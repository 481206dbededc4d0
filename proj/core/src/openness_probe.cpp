#include "openmult/openness_probe.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "openmult/error.hpp"
#include "openmult/interval_factorizer.hpp"

namespace openmult {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Distance from y to p / x' for x' = x + rho e^{i theta}; +inf at x' = 0.
double miss(Complex p, Complex x, Complex y, double rho, double theta) {
  const Complex xp = x + std::polar(rho, theta);
  if (xp == Complex(0.0)) return std::numeric_limits<double>::infinity();
  return std::abs(p / xp - y);
}

// Whether p = x' y' for some |x' - x| <= eps, |y' - y| <= eps.
bool representable(Complex p, Complex x, Complex y, double eps) {
  if (p == Complex(0.0)) return std::abs(x) <= eps || std::abs(y) <= eps;
  const double accept = eps * (1.0 + 1e-9);
  constexpr int kRadii = 16;
  constexpr int kAngles = 64;
  double best = std::numeric_limits<double>::infinity();
  double best_rho = 0.0;
  double best_theta = 0.0;
  for (int i = 0; i <= kRadii; ++i) {
    const double rho = eps * i / kRadii;
    for (int j = 0; j < kAngles; ++j) {
      const double theta = kTwoPi * j / kAngles;
      const double m = miss(p, x, y, rho, theta);
      if (m < best) {
        best = m;
        best_rho = rho;
        best_theta = theta;
      }
      if (best <= accept) return true;
      if (i == 0) break;
    }
  }
  // Compass search in (rho, theta), rho clamped to [0, eps].
  double step_rho = eps / kRadii;
  double step_theta = kTwoPi / kAngles;
  while (step_rho > eps * 1e-10) {
    bool moved = false;
    const double cand[4][2] = {{step_rho, 0}, {-step_rho, 0}, {0, step_theta}, {0, -step_theta}};
    for (const auto& c : cand) {
      const double r = std::clamp(best_rho + c[0], 0.0, eps);
      const double t = best_theta + c[1];
      const double m = miss(p, x, y, r, t);
      if (m < best) {
        best = m;
        best_rho = r;
        best_theta = t;
        moved = true;
      }
    }
    if (best <= accept) return true;
    if (!moved) {
      step_rho *= 0.5;
      step_theta *= 0.5;
    }
  }
  return best <= accept;
}

bool all_phases_representable(double r, Complex x, Complex y, double eps, int grid) {
  const Complex xy = x * y;
  for (int k = 0; k < grid; ++k) {
    if (!representable(xy + std::polar(r, kTwoPi * k / grid), x, y, eps)) return false;
  }
  return true;
}

// Random smooth d with sup over the grid exactly r.
GridFunction random_perturbation(const IntervalDomain& dom, double r, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> phase(0.0, kTwoPi);
  constexpr int kModes = 4;
  Complex coef[kModes];
  double shift[kModes];
  for (int m = 0; m < kModes; ++m) {
    coef[m] = Complex(normal(rng), normal(rng)) / double(m + 1);
    shift[m] = phase(rng);
  }
  const double len = dom.b() - dom.a();
  auto v = GridFunction::sample(dom, [&](double t) {
    Complex s = 0.0;
    for (int m = 0; m < kModes; ++m) s += coef[m] * std::cos(kTwoPi * m * (t - dom.a()) / len + shift[m]);
    return s;
  });
  const double sup = sup_norm(v);
  if (sup == 0.0) return GridFunction::constant(dom, r);
  return (r / sup) * v;
}

bool trial_passes(const GridFunction& f, const GridFunction& g, const GridFunction& d,
                  double eps0) {
  try {
    const auto res = open_mult_interval(f, g, d, eps0, Enforcement::Relaxed);
    const double scale = 1.0 + sup_norm(pointwise_product(f, g) + d);
    return res.residual <= 1e-9 * scale && res.bound1 <= eps0 && res.bound2 <= eps0;
  } catch (const Error&) {
    return false;
  }
}

}  // namespace

double brute_scalar_delta(double eps, Complex x, Complex y, int grid) {
  if (!(eps > 0.0)) throw Error(ErrorCode::InvalidArgument, "epsilon must be positive");
  if (grid < 8) throw Error(ErrorCode::InvalidArgument, "grid must be at least 8");
  const double ax = std::abs(x);
  const double ay = std::abs(y);
  // Beyond this radius the aligned phase leaves the image of the two balls.
  double hi = (ax + eps) * (ay + eps) - ax * ay;
  if (all_phases_representable(hi, x, y, eps, grid)) return hi;
  double lo = 0.0;
  while (hi - lo > 1e-4 * hi) {
    const double mid = 0.5 * (lo + hi);
    if (all_phases_representable(mid, x, y, eps, grid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

ProbeReport probe_pipeline(const GridFunction& f, const GridFunction& g, double eps0, int trials,
                           std::uint64_t seed) {
  if (trials < 1) throw Error(ErrorCode::InvalidArgument, "trials must be at least 1");
  require_same_domain(f, g);
  const double base = delta0(eps0);
  ProbeReport report{eps0, base, 0.0, 0, seed, {}};
  std::mt19937_64 rng(seed);
  // 1, 1.5, 2, 3, 4, 6, 8, ... times delta0.
  double multiple = 1.0;
  for (int rung = 0; rung < 40; ++rung) {
    const double r = base * multiple;
    if (r > 1.0) break;
    int passed = 0;
    for (int t = 0; t < trials; ++t) {
      const auto d = random_perturbation(f.domain(), r, rng);
      if (trial_passes(f, g, d, eps0)) ++passed;
      ++report.samples;
    }
    report.curve.push_back({r, static_cast<double>(passed) / trials});
    if (passed < trials) break;
    report.delta_empirical = r;
    multiple *= (rung % 2 == 0) ? 1.5 : 4.0 / 3.0;
  }
  return report;
}

}  // namespace openmult
