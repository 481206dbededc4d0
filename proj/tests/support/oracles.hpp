#pragma once

// Independent reference computations. They use extended precision and the
// textbook formulas, never the library's own code paths.

#include <algorithm>
#include <complex>
#include <utility>

#include "openmult/function.hpp"

namespace openmult::testing {

using LComplex = std::complex<long double>;

inline LComplex widen(Complex z) { return {z.real(), z.imag()}; }

/// Both roots of gamma z^2 + beta z + alpha by the textbook formula, sorted by
/// increasing modulus.
inline std::pair<LComplex, LComplex> textbook_roots(Complex alpha, Complex beta, Complex gamma) {
  const LComplex a = widen(gamma);
  const LComplex b = widen(beta);
  const LComplex c = widen(alpha);
  const LComplex s = std::sqrt(b * b - 4.0L * a * c);
  LComplex r1 = (-b + s) / (2.0L * a);
  LComplex r2 = (-b - s) / (2.0L * a);
  if (std::abs(r1) > std::abs(r2)) std::swap(r1, r2);
  return {r1, r2};
}

/// max over nodes of |(f + d1)(g + d2) - (fg + d)| in extended precision.
inline long double node_residual(const GridFunction& f, const GridFunction& g,
                                 const GridFunction& d, const GridFunction& d1,
                                 const GridFunction& d2) {
  long double worst = 0.0L;
  for (std::size_t k = 0; k < f.size(); ++k) {
    const LComplex lhs = (widen(f[k]) + widen(d1[k])) * (widen(g[k]) + widen(d2[k]));
    const LComplex rhs = widen(f[k]) * widen(g[k]) + widen(d[k]);
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

/// Node scan of max |f|.
inline double scan_sup(std::span<const Complex> v) {
  double m = 0.0;
  for (Complex z : v) m = std::max(m, std::abs(z));
  return m;
}

}  // namespace openmult::testing
