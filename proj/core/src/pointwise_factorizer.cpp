#include "openmult/pointwise_factorizer.hpp"

#include <cmath>
#include <sstream>
#include <tuple>

#include "openmult/error.hpp"

namespace openmult {

namespace {

void require_eps(double eps) {
  if (!(eps > 0.0) || !std::isfinite(eps)) {
    throw Error(ErrorCode::InvalidArgument, "epsilon must be positive");
  }
}

// Largest power of two not above x (x > 0).
double power_of_two_below(double x) {
  int e = 0;
  std::frexp(x, &e);
  return std::ldexp(1.0, e - 1);
}

}  // namespace

std::pair<Complex, Complex> scalar_factor(Complex x, Complex y, Complex w, double eps) {
  require_eps(eps);
  const double budget = eps * eps / 4.0;
  if (std::abs(w) > budget * (1.0 + 1e-12)) {
    std::ostringstream os;
    os << "perturbation " << std::abs(w) << " exceeds eps^2/4 = " << budget;
    throw Error(ErrorCode::PerturbationTooLarge, os.str());
  }
  if (w == Complex(0.0)) return {x, y};
  const double ax = std::abs(x);
  const double ay = std::abs(y);
  // At |w| / eps == max(|x|, |y|) the rounded step can land past eps; the
  // balanced branch covers that boundary with room to spare.
  if (std::max(ax, ay) >= std::abs(w) / eps) {
    if (ax >= ay) {
      const Complex y1 = y + w / x;
      if (std::abs(y1 - y) <= eps) return {x, y1};
    } else {
      const Complex x1 = x + w / y;
      if (std::abs(x1 - x) <= eps) return {x1, y};
    }
  }
  const Complex root = std::sqrt(x * y + w);
  return {root, root};
}

std::pair<FiniteSpaceFunction, FiniteSpaceFunction> open_mult_finite(
    const FiniteSpaceFunction& a, const FiniteSpaceFunction& b, const FiniteSpaceFunction& d,
    double eps) {
  if (a.size() != b.size() || a.size() != d.size()) {
    throw Error(ErrorCode::DomainMismatch, "functions live on different spaces");
  }
  std::vector<Complex> x(a.size());
  std::vector<Complex> y(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    std::tie(x[k], y[k]) = scalar_factor(a[k], b[k], d[k], eps);
  }
  return {FiniteSpaceFunction(std::move(x)), FiniteSpaceFunction(std::move(y))};
}

std::pair<FiniteSpaceFunction, FiniteSpaceFunction> nondeg_approx(const FiniteSpaceFunction& f,
                                                                   const FiniteSpaceFunction& g,
                                                                   double eps) {
  require_eps(eps);
  if (f.size() != g.size()) {
    throw Error(ErrorCode::DomainMismatch, "functions live on different spaces");
  }
  const double third = eps / 3.0;
  const double half = eps / 2.0;
  const double safe = power_of_two_below(half);
  std::vector<Complex> x(f.size());
  std::vector<Complex> y(f.size());
  for (std::size_t k = 0; k < f.size(); ++k) {
    const Complex fk = f[k];
    const Complex gk = g[k];
    if (std::abs(fk) >= third || std::abs(gk) >= third) {
      x[k] = fk;
      y[k] = gk;
      continue;
    }
    const Complex p = fk * gk;
    // Use eps/2 when the division round-trips; otherwise a power of two,
    // for which p / c * c == p holds barring underflow.
    Complex c = half;
    Complex q = p / c;
    if (q * c != p) {
      c = safe;
      q = p / c;
    }
    x[k] = c;
    y[k] = q;
  }
  return {FiniteSpaceFunction(std::move(x)), FiniteSpaceFunction(std::move(y))};
}

AlgebraElement to_algebra_element(const DiagonalAlgebraElement& a) {
  AlgebraElement out;
  out.coords.reserve(a.coords.size() + 1);
  out.coords.push_back(a.scalar);
  out.coords.insert(out.coords.end(), a.coords.begin(), a.coords.end());
  return out;
}

DiagonalAlgebraElement to_diagonal_element(const AlgebraElement& a) {
  if (a.coords.empty()) throw Error(ErrorCode::InvalidArgument, "element has no scalar part");
  return DiagonalAlgebraElement{a.coords.front(), {a.coords.begin() + 1, a.coords.end()}};
}

DiagonalFactorization diagonal_open_mult(const DiagonalAlgebraElement& a,
                                         const DiagonalAlgebraElement& b,
                                         const DiagonalAlgebraElement& d, double eps,
                                         const DiagonalModel& model,
                                         const SchemeOptions& options) {
  const AlgebraElement F = to_algebra_element(a);
  const AlgebraElement G = to_algebra_element(b);
  const AlgebraElement H = to_algebra_element(d);
  const SchemeParams params = scheme_params(F, G, eps, model);
  SchemeRun run = run_scheme(F, G, H, params, model, options);
  return DiagonalFactorization{to_diagonal_element(run.f), to_diagonal_element(run.g), params,
                               std::move(run.trace), run.product_residual};
}

}  // namespace openmult
