#pragma once

// Roots of gamma*z^2 + beta*z + alpha with |gamma| = 1, and the map Z that
// picks the root of strictly smaller modulus.

#include <utility>

#include "openmult/function.hpp"

namespace openmult {

struct QuadraticTriple {
  Complex alpha;
  Complex beta;
  Complex gamma;

  /// Throws InvalidArgument unless | |gamma| - 1 | <= 1e-12.
  void validate() const;
};

inline constexpr double kModulusTieTolerance = 1e-12;

/// Both roots; the first has modulus >= the second. The larger root comes from
/// the cancellation-free branch of the quadratic formula and the smaller one
/// from the Vieta product, so tiny alpha does not lose precision.
std::pair<Complex, Complex> roots(const QuadraticTriple& t);

/// Membership in the set where the two roots have different moduli.
bool in_delta(const QuadraticTriple& t);

/// Throws NotInDelta when the moduli tie.
Complex smaller_root(const QuadraticTriple& t);

}  // namespace openmult
