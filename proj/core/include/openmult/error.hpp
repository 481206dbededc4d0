#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace openmult {

enum class ErrorCode {
  DomainMismatch,
  InvalidArgument,
  NotInDelta,
  PreconditionViolated,
  ZeroArgument,
  NonUnimodularInput,
  CoverInfeasible,
  BoundaryMismatch,
  NormBudgetExceeded,
  PerturbationTooLarge,
  VertexInconsistency,
  DegeneratePair,
  ClaimViolation,
  NonConvergence,
};

std::string_view to_string(ErrorCode code);

// Errors caused by the caller's input (as opposed to a broken internal
// invariant). The CLI maps these to exit status 2.
bool is_precondition_error(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace openmult
