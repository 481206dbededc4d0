#pragma once

// Openness of multiplication on finite discrete spaces, where every point can
// be handled independently, and in the unitised weighted-l1 diagonal algebra.

#include <utility>
#include <vector>

#include "openmult/function.hpp"
#include "openmult/inversion_scheme.hpp"

namespace openmult {

/// x' y' = x y + w with |x' - x|, |y' - y| <= eps, for |w| <= eps^2 / 4.
std::pair<Complex, Complex> scalar_factor(Complex x, Complex y, Complex w, double eps);

/// scalar_factor at every point; requires sup|d| <= eps^2 / 4.
std::pair<FiniteSpaceFunction, FiniteSpaceFunction> open_mult_finite(
    const FiniteSpaceFunction& a, const FiniteSpaceFunction& b, const FiniteSpaceFunction& d,
    double eps);

/// eps-close pair with the same product and |f'|^2 + |g'|^2 > 0 everywhere.
/// Points where |f| >= eps/3 or |g| >= eps/3 are left alone; elsewhere f' is
/// a nonzero constant and g' = f g / f'.
std::pair<FiniteSpaceFunction, FiniteSpaceFunction> nondeg_approx(const FiniteSpaceFunction& f,
                                                                   const FiniteSpaceFunction& g,
                                                                   double eps);

/// scalar + sum_k coords[k] e_k in the unitised diagonal algebra.
struct DiagonalAlgebraElement {
  Complex scalar;
  std::vector<Complex> coords;
};

AlgebraElement to_algebra_element(const DiagonalAlgebraElement& a);
DiagonalAlgebraElement to_diagonal_element(const AlgebraElement& a);

struct DiagonalFactorization {
  DiagonalAlgebraElement a;
  DiagonalAlgebraElement b;
  SchemeParams params;
  SchemeTrace trace;
  double product_residual;
};

/// a' b' = a b + d with ||a' - a||, ||b' - b|| < eps. Throws
/// PerturbationTooLarge unless ||d|| is below the scheme's delta.
DiagonalFactorization diagonal_open_mult(const DiagonalAlgebraElement& a,
                                         const DiagonalAlgebraElement& b,
                                         const DiagonalAlgebraElement& d, double eps,
                                         const DiagonalModel& model,
                                         const SchemeOptions& options = {});

}  // namespace openmult
