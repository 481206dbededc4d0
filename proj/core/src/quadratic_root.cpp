#include "openmult/quadratic_root.hpp"

#include <cmath>

#include "openmult/error.hpp"

namespace openmult {

void QuadraticTriple::validate() const {
  if (std::abs(std::abs(gamma) - 1.0) > 1e-12) {
    throw Error(ErrorCode::InvalidArgument, "leading coefficient must be unimodular");
  }
}

std::pair<Complex, Complex> roots(const QuadraticTriple& t) {
  t.validate();
  const Complex zero(0.0, 0.0);
  if (t.alpha == zero && t.beta == zero) return {zero, zero};

  // disc = beta^2 - 4 gamma alpha; choose the sign of sqrt(disc) so that
  // beta + s does not cancel.
  Complex s = std::sqrt(t.beta * t.beta - 4.0 * t.gamma * t.alpha);
  if ((std::conj(t.beta) * s).real() < 0.0) s = -s;
  const Complex q = -0.5 * (t.beta + s);
  // q == 0 forces beta == 0 and disc == 0, hence alpha == 0: handled above.
  const Complex large = q / t.gamma;
  const Complex small = t.alpha / q;
  if (std::abs(small) > std::abs(large)) return {small, large};
  return {large, small};
}

bool in_delta(const QuadraticTriple& t) {
  const auto [z1, z2] = roots(t);
  const double m1 = std::abs(z1);
  const double m2 = std::abs(z2);
  return std::abs(m1 - m2) > kModulusTieTolerance * (1.0 + m1 + m2);
}

Complex smaller_root(const QuadraticTriple& t) {
  const auto [z1, z2] = roots(t);
  const double m1 = std::abs(z1);
  const double m2 = std::abs(z2);
  if (!(std::abs(m1 - m2) > kModulusTieTolerance * (1.0 + m1 + m2))) {
    throw Error(ErrorCode::NotInDelta, "roots have equal modulus");
  }
  return z2;
}

}  // namespace openmult
