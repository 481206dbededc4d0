#include "openmult/error.hpp"

namespace openmult {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DomainMismatch: return "DomainMismatch";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NotInDelta: return "NotInDelta";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::ZeroArgument: return "ZeroArgument";
    case ErrorCode::NonUnimodularInput: return "NonUnimodularInput";
    case ErrorCode::CoverInfeasible: return "CoverInfeasible";
    case ErrorCode::BoundaryMismatch: return "BoundaryMismatch";
    case ErrorCode::NormBudgetExceeded: return "NormBudgetExceeded";
    case ErrorCode::PerturbationTooLarge: return "PerturbationTooLarge";
    case ErrorCode::VertexInconsistency: return "VertexInconsistency";
    case ErrorCode::DegeneratePair: return "DegeneratePair";
    case ErrorCode::ClaimViolation: return "ClaimViolation";
    case ErrorCode::NonConvergence: return "NonConvergence";
  }
  return "Unknown";
}

bool is_precondition_error(ErrorCode code) {
  switch (code) {
    case ErrorCode::ClaimViolation:
    case ErrorCode::NonConvergence:
    case ErrorCode::VertexInconsistency:
      return false;
    default:
      return true;
  }
}

}  // namespace openmult
