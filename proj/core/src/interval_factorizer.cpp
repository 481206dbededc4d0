#include "openmult/interval_factorizer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "openmult/error.hpp"
#include "openmult/quadratic_root.hpp"

namespace openmult {

namespace {

// Relative slack on inequality preconditions so that inputs scaled to sit
// exactly on a bound are not rejected over the last ulp.
constexpr double kGrace = 1e-12;
constexpr double kProductTolerance = 1e-9;
constexpr double kUnimodularTolerance = 1e-9;

bool within(double value, double bound) { return value <= bound * (1.0 + kGrace); }

std::vector<Complex> to_vector(std::span<const Complex> v) { return {v.begin(), v.end()}; }

// Shortest signed arc from a to b on the circle; antipodal ties resolve to +pi.
double shortest_arc(double from, double to) {
  double delta = std::remainder(to - from, 2.0 * std::numbers::pi);
  if (std::abs(delta) >= std::numbers::pi - 1e-12) delta = std::numbers::pi;
  return delta;
}

GridFunction quadratic_correction_impl(const GridFunction& f, const GridFunction& g,
                                       const GridFunction& d, double eta, double eps,
                                       Enforcement mode) {
  require_same_domain(f, g);
  require_same_domain(f, d);
  if (!(eta > 0.0) || !(eps > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "eta and eps must be positive");
  }
  for (std::size_t k = 0; k < f.size(); ++k) {
    if (!within(eta, std::abs(f[k]))) {
      throw Error(ErrorCode::PreconditionViolated,
                  "f: |f| < eta at node " + std::to_string(k));
    }
    if (std::abs(std::abs(g[k]) - 1.0) > kUnimodularTolerance) {
      throw Error(ErrorCode::PreconditionViolated,
                  "g: |g| != 1 at node " + std::to_string(k));
    }
  }
  if (mode == Enforcement::Checked && !within(sup_norm(d), correction_radius(eta, eps))) {
    throw Error(ErrorCode::PreconditionViolated, "d: sup norm exceeds correction radius");
  }
  std::vector<Complex> phi(f.size());
  for (std::size_t k = 0; k < phi.size(); ++k) {
    // Rescale so the leading coefficient is exactly unimodular; roots unchanged.
    const double m = std::abs(g[k]);
    phi[k] = smaller_root({-d[k] / m, f[k] / m, g[k] / m});
  }
  return GridFunction(f.domain(), std::move(phi));
}

FactorPair halfboundary_impl(const GridFunction& psi, double eps, Complex za, Complex wa,
                             Complex zhat, Side side, bool check) {
  const std::size_t n = psi.size();
  std::vector<Complex> p = to_vector(psi.values());
  if (side == Side::Right) std::reverse(p.begin(), p.end());

  if (check) {
    if (!within(sup_norm(psi), eps * eps)) {
      throw Error(ErrorCode::NormBudgetExceeded, "sup |psi| exceeds eps^2");
    }
    if (!within(std::abs(za), eps) || !within(std::abs(wa), eps)) {
      throw Error(ErrorCode::NormBudgetExceeded, "boundary factor exceeds eps");
    }
  }
  if (std::abs(za * wa - p.front()) > kProductTolerance * (1.0 + std::abs(p.front()))) {
    throw Error(ErrorCode::BoundaryMismatch, "Za * Wa != psi at the prescribed end");
  }
  if (std::abs(zhat * zhat - p.back()) > kProductTolerance * (1.0 + std::abs(p.back()))) {
    throw Error(ErrorCode::BoundaryMismatch, "Zhat^2 != psi at the free end");
  }

  // The factor with the larger boundary modulus leads: it dominates
  // sqrt|psi| at the prescribed end, so its modulus profile starts exactly there.
  const bool z1_leads = std::abs(za) >= std::abs(wa);
  const Complex lead = z1_leads ? za : wa;
  const Complex other = z1_leads ? wa : za;

  const double ra = std::abs(lead);
  const double rb = std::abs(zhat);
  double theta_a = std::arg(lead);
  double theta_b = std::arg(zhat);
  if (ra == 0.0) theta_a = theta_b;
  if (rb == 0.0) theta_b = theta_a;
  const double arc = shortest_arc(theta_a, theta_b);

  std::vector<Complex> lead_v(n);
  std::vector<Complex> other_v(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double s = static_cast<double>(k) / static_cast<double>(n - 1);
    const double r = std::max(std::sqrt(std::abs(p[k])), (1.0 - s) * ra + s * rb);
    lead_v[k] = std::polar(r, theta_a + s * arc);
    other_v[k] = lead_v[k] == Complex(0.0, 0.0) ? Complex(0.0, 0.0) : p[k] / lead_v[k];
  }
  lead_v.front() = lead;
  other_v.front() = other;
  lead_v.back() = zhat;
  other_v.back() = zhat;

  if (side == Side::Right) {
    std::reverse(lead_v.begin(), lead_v.end());
    std::reverse(other_v.begin(), other_v.end());
  }
  GridFunction l(psi.domain(), std::move(lead_v));
  GridFunction o(psi.domain(), std::move(other_v));
  if (z1_leads) return {std::move(l), std::move(o)};
  return {std::move(o), std::move(l)};
}

FactorPair factor_interval_impl(const GridFunction& psi, double eps, Complex za, Complex wa,
                                Complex zb, Complex wb, bool check) {
  const std::size_t n = psi.size();
  if (check) {
    if (!within(sup_norm(psi), eps * eps)) {
      throw Error(ErrorCode::NormBudgetExceeded, "sup |psi| exceeds eps^2");
    }
    for (Complex c : {za, wa, zb, wb}) {
      if (!within(std::abs(c), eps)) {
        throw Error(ErrorCode::NormBudgetExceeded, "boundary factor exceeds eps");
      }
    }
  }
  if (n == 2) {
    if (std::abs(za * wa - psi.front()) > kProductTolerance * (1.0 + std::abs(psi.front())) ||
        std::abs(zb * wb - psi.back()) > kProductTolerance * (1.0 + std::abs(psi.back()))) {
      throw Error(ErrorCode::BoundaryMismatch, "boundary products do not match psi");
    }
    return {GridFunction(psi.domain(), {za, zb}), GridFunction(psi.domain(), {wa, wb})};
  }
  const std::size_t mid = (n - 1) / 2;
  const Complex zhat = std::sqrt(psi[mid]);
  const FactorPair left = halfboundary_impl(psi.slice(0, mid), eps, za, wa, zhat, Side::Left, check);
  const FactorPair right =
      halfboundary_impl(psi.slice(mid, n - 1), eps, zb, wb, zhat, Side::Right, check);

  std::vector<Complex> z1 = to_vector(left.z1.values());
  std::vector<Complex> z2 = to_vector(left.z2.values());
  z1.insert(z1.end(), right.z1.values().begin() + 1, right.z1.values().end());
  z2.insert(z2.end(), right.z2.values().begin() + 1, right.z2.values().end());
  return {GridFunction(psi.domain(), std::move(z1)), GridFunction(psi.domain(), std::move(z2))};
}

// Free boundary value for a degenerate end: Z = principal sqrt(psi), W = psi / Z.
std::pair<Complex, Complex> balanced_split(Complex psi) {
  const Complex z = std::sqrt(psi);
  return {z, z == Complex(0.0, 0.0) ? Complex(0.0, 0.0) : psi / z};
}

}  // namespace

bool IntervalCover::contains(std::size_t node) const {
  return std::any_of(intervals.begin(), intervals.end(),
                     [node](const IndexRange& r) { return r.first <= node && node <= r.last; });
}

PipelineConfig::PipelineConfig(double eps0)
    : epsilon0(eps0),
      epsilon1(eps0 / 7.0),
      eta1(epsilon1 * epsilon1),
      eta2(4.0 * epsilon1 * epsilon1),
      delta0(std::min(epsilon1 * epsilon1, correction_radius(epsilon1, epsilon1))) {
  if (!(eps0 > 0.0 && eps0 < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "epsilon0 must lie in (0, 1)");
  }
}

double correction_radius(double eta, double eps) {
  if (!(eta > 0.0) || !(eps > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "eta and eps must be positive");
  }
  return std::min(eps * eta / 2.0, eta * eta / 5.0);
}

double delta0(double eps0) { return PipelineConfig(eps0).delta0; }

GridFunction quadratic_correction(const GridFunction& f, const GridFunction& g,
                                  const GridFunction& d, double eta, double eps) {
  return quadratic_correction_impl(f, g, d, eta, eps, Enforcement::Checked);
}

Complex phase_offset(Complex z, Complex w) {
  if (z == Complex(0.0, 0.0) || w == Complex(0.0, 0.0)) {
    throw Error(ErrorCode::ZeroArgument, "phase_offset needs nonzero arguments");
  }
  const Complex u = std::conj(w) * z;
  return Complex(0.0, 1.0) * (u / std::abs(u));
}

GridFunction circle_extend(const GridFunction& partial, std::span<const IndexRange> gaps) {
  const std::size_t n = partial.size();
  std::vector<bool> undefined(n, false);
  for (const IndexRange& g : gaps) {
    if (g.first > g.last || g.last >= n) {
      throw Error(ErrorCode::InvalidArgument, "gap outside the grid");
    }
    for (std::size_t k = g.first; k <= g.last; ++k) undefined[k] = true;
  }
  std::vector<Complex> v = to_vector(partial.values());
  for (std::size_t k = 0; k < n; ++k) {
    if (!undefined[k] && std::abs(std::abs(v[k]) - 1.0) > kUnimodularTolerance) {
      throw Error(ErrorCode::NonUnimodularInput,
                  "defined value off the unit circle at node " + std::to_string(k));
    }
  }
  std::size_t k = 0;
  while (k < n) {
    if (!undefined[k]) {
      ++k;
      continue;
    }
    const std::size_t first = k;
    while (k < n && undefined[k]) ++k;
    const std::size_t last = k - 1;
    const bool has_left = first > 0;
    const bool has_right = last + 1 < n;
    if (!has_left && !has_right) {
      std::fill(v.begin(), v.end(), Complex(1.0, 0.0));
      break;
    }
    if (!has_left || !has_right) {
      const Complex anchor = has_left ? v[first - 1] : v[last + 1];
      const Complex unit = anchor / std::abs(anchor);
      for (std::size_t j = first; j <= last; ++j) v[j] = unit;
      continue;
    }
    const std::size_t lo = first - 1;
    const std::size_t hi = last + 1;
    const double theta = std::arg(v[lo]);
    const double arc = shortest_arc(theta, std::arg(v[hi]));
    for (std::size_t j = first; j <= last; ++j) {
      const double s = static_cast<double>(j - lo) / static_cast<double>(hi - lo);
      v[j] = std::polar(1.0, theta + s * arc);
    }
  }
  return GridFunction(partial.domain(), std::move(v));
}

IntervalCover sublevel_cover(std::span<const double> h, double eta1, double eta2,
                             std::span<const std::size_t> seeds) {
  if (!(eta1 > 0.0 && eta1 < eta2)) {
    throw Error(ErrorCode::InvalidArgument, "sublevel_cover needs 0 < eta1 < eta2");
  }
  const std::size_t n = h.size();
  std::vector<bool> low(n, false);
  for (std::size_t k = 0; k < n; ++k) {
    if (!(h[k] >= 0.0)) throw Error(ErrorCode::InvalidArgument, "h must be nonnegative");
    low[k] = h[k] <= eta1;
  }
  for (std::size_t s : seeds) {
    if (s >= n) throw Error(ErrorCode::InvalidArgument, "seed outside the grid");
    if (!(h[s] < eta2)) {
      throw Error(ErrorCode::CoverInfeasible, "seed node is not below eta2");
    }
    low[s] = true;
  }

  IntervalCover cover;
  std::size_t k = 0;
  while (k < n) {
    if (!low[k]) {
      ++k;
      continue;
    }
    const std::size_t p = k;
    while (k < n && low[k]) ++k;
    const std::size_t q = k - 1;
    IndexRange r{p, q};
    if (p > 0) {
      if (!(h[p - 1] < eta2)) {
        throw Error(ErrorCode::CoverInfeasible,
                    "h jumps across (eta1, eta2) at node " + std::to_string(p - 1) +
                        "; refine the grid");
      }
      r.first = p - 1;
    }
    if (q + 1 < n) {
      if (!(h[q + 1] < eta2)) {
        throw Error(ErrorCode::CoverInfeasible,
                    "h jumps across (eta1, eta2) at node " + std::to_string(q + 1) +
                        "; refine the grid");
      }
      r.last = q + 1;
    }
    if (!cover.intervals.empty() && r.first <= cover.intervals.back().last) {
      cover.intervals.back().last = std::max(cover.intervals.back().last, r.last);
    } else {
      cover.intervals.push_back(r);
    }
  }
  return cover;
}

IntervalCover sublevel_cover(const GridFunction& h, double eta1, double eta2) {
  std::vector<double> re(h.size());
  for (std::size_t k = 0; k < re.size(); ++k) re[k] = h[k].real();
  return sublevel_cover(re, eta1, eta2);
}

NondegPhases nondeg_phases(const GridFunction& h1, const GridFunction& h2, double eta,
                           const PhasePins& pins) {
  require_same_domain(h1, h2);
  if (!(eta > 0.0)) throw Error(ErrorCode::InvalidArgument, "eta must be positive");
  const std::size_t n = h1.size();
  const std::vector<double> h = squared_modulus_sum(h1, h2);
  const double eta_sq = eta * eta;
  double min_h = h.front();
  for (std::size_t k = 0; k < n; ++k) {
    if (!within(eta_sq, h[k])) {
      throw Error(ErrorCode::PreconditionViolated,
                  "|h1|^2 + |h2|^2 < eta^2 at node " + std::to_string(k));
    }
    min_h = std::min(min_h, h[k]);
  }
  // Spare non-degeneracy eta0 (capped so 2 eta0^2 < eta^2) and the small-value
  // threshold s = tau * eta0 with sqrt(eta^2 + eta0^2 - s^2) - s >= eta.
  const double eta0_sq = std::min(std::max(min_h - eta_sq, 0.0), 0.49 * eta_sq);
  const double threshold = 0.9 * 0.5 * (std::sqrt(eta_sq + 2.0 * eta0_sq) - eta);

  std::vector<bool> gap(n, false);
  for (const GridFunction* hf : {&h1, &h2}) {
    const GridFunction& fn = *hf;
    std::size_t k = 0;
    while (k < n) {
      if (!(std::abs(fn[k]) < threshold)) {
        ++k;
        continue;
      }
      const std::size_t first = k;
      bool reaches_half = false;
      while (k < n && std::abs(fn[k]) < threshold) {
        reaches_half = reaches_half || std::abs(fn[k]) <= 0.5 * threshold;
        ++k;
      }
      if (reaches_half) {
        for (std::size_t j = first; j < k; ++j) gap[j] = true;
      }
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    if (h1[k] == Complex(0.0, 0.0) || h2[k] == Complex(0.0, 0.0)) gap[k] = true;
  }

  std::vector<Complex> beta2(n, Complex(1.0, 0.0));
  for (std::size_t k = 0; k < n; ++k) {
    if (!gap[k]) beta2[k] = phase_offset(h1[k], h2[k]);
  }
  auto pin = [&](std::size_t k, Complex value) {
    if (std::abs(std::abs(value) - 1.0) > kUnimodularTolerance) {
      throw Error(ErrorCode::NonUnimodularInput, "phase pin off the unit circle");
    }
    gap[k] = false;
    beta2[k] = value;
  };
  if (pins.left) pin(0, *pins.left);
  if (pins.right) pin(n - 1, *pins.right);

  std::vector<IndexRange> gaps;
  for (std::size_t k = 0; k < n;) {
    if (!gap[k]) {
      ++k;
      continue;
    }
    const std::size_t first = k;
    while (k < n && gap[k]) ++k;
    gaps.push_back({first, k - 1});
  }
  GridFunction b2 = circle_extend(GridFunction(h1.domain(), std::move(beta2)), gaps);

  for (std::size_t k = 0; k < n; ++k) {
    if (!within(eta, std::abs(h1[k] + h2[k] * b2[k]))) {
      throw Error(ErrorCode::PreconditionViolated,
                  "phase choice misses the eta lower bound at node " + std::to_string(k));
    }
  }
  return {GridFunction::constant(h1.domain(), 1.0), std::move(b2), std::move(gaps)};
}

namespace {

CorrectionPair perturb_nondeg_impl(const GridFunction& h1, const GridFunction& h2,
                                   const GridFunction& d, double eta, double eps,
                                   const PhasePins& pins, Enforcement mode) {
  const NondegPhases phases = nondeg_phases(h1, h2, eta, pins);
  const GridFunction& beta2 = phases.beta2;
  // beta1 == 1, so f = h1 + h2 beta2 and g = beta1 beta2 = beta2.
  const GridFunction f = h1 + pointwise_product(h2, beta2);
  GridFunction phi = quadratic_correction_impl(f, beta2, d, eta, eps, mode);
  GridFunction z2 = pointwise_product(beta2, phi);
  return {std::move(phi), std::move(z2)};
}

}  // namespace

CorrectionPair perturb_nondeg(const GridFunction& h1, const GridFunction& h2,
                              const GridFunction& d, double eta, double eps,
                              const PhasePins& pins) {
  return perturb_nondeg_impl(h1, h2, d, eta, eps, pins, Enforcement::Checked);
}

FactorPair factor_halfboundary(const GridFunction& psi, double eps, Complex za, Complex wa,
                               Complex zhat, Side side) {
  return halfboundary_impl(psi, eps, za, wa, zhat, side, true);
}

FactorPair factor_interval(const GridFunction& psi, double eps, Complex za, Complex wa,
                           Complex zb, Complex wb) {
  return factor_interval_impl(psi, eps, za, wa, zb, wb, true);
}

EndpointPin endpoint_pin(Complex f, Complex g, Complex d, const PipelineConfig& config) {
  const Complex zero(0.0, 0.0);
  if (std::norm(f) + std::norm(g) <= config.eta1) {
    const auto [z, w] = balanced_split(f * g + d);
    return {z - f, w - g, Complex(1.0, 0.0), true};
  }
  const Complex beta2 = (f == zero || g == zero) ? Complex(1.0, 0.0) : phase_offset(f, g);
  const Complex lead = f + g * beta2;
  const Complex phi = smaller_root({-d, lead, beta2});
  return {beta2 * phi, phi, beta2, false};
}

double factorization_residual(const GridFunction& f, const GridFunction& g, const GridFunction& d,
                              const GridFunction& d1, const GridFunction& d2) {
  require_same_domain(f, g);
  require_same_domain(f, d);
  require_same_domain(f, d1);
  require_same_domain(f, d2);
  double worst = 0.0;
  for (std::size_t k = 0; k < f.size(); ++k) {
    const Complex lhs = (f[k] + d1[k]) * (g[k] + d2[k]);
    worst = std::max(worst, std::abs(lhs - (f[k] * g[k] + d[k])));
  }
  return worst;
}

FactorizationResult open_mult_pinned(const GridFunction& f, const GridFunction& g,
                                     const GridFunction& d, const PipelineConfig& config,
                                     const EndpointPin& left, const EndpointPin& right,
                                     Enforcement mode) {
  require_same_domain(f, g);
  require_same_domain(f, d);
  const bool checked = mode == Enforcement::Checked;
  if (checked && !within(sup_norm(d), config.delta0)) {
    throw Error(ErrorCode::PerturbationTooLarge, "perturbation exceeds delta0");
  }
  const std::size_t n = f.size();
  const std::vector<double> h = squared_modulus_sum(f, g);

  std::vector<std::size_t> seeds;
  if (left.degenerate) seeds.push_back(0);
  if (right.degenerate) seeds.push_back(n - 1);
  IntervalCover cover = sublevel_cover(h, config.eta1, config.eta2, seeds);

  std::vector<Complex> d1(n);
  std::vector<Complex> d2(n);
  std::vector<bool> assigned(n, false);
  auto assign_pins = [&] {
    d1.front() = left.d1;
    d2.front() = left.d2;
    d1.back() = right.d1;
    d2.back() = right.d2;
    assigned.front() = assigned.back() = true;
  };

  // Complement segments: f, g jointly eps1^2-non-degenerate.
  std::vector<IndexRange> segments;
  {
    std::size_t start = 0;
    for (const IndexRange& r : cover.intervals) {
      if (r.first > start) segments.push_back({start, r.first});
      start = r.last;
    }
    if (cover.intervals.empty()) {
      segments.push_back({0, n - 1});
    } else if (start < n - 1) {
      segments.push_back({start, n - 1});
    }
  }
  const double eps1 = config.epsilon1;
  for (const IndexRange& s : segments) {
    PhasePins pins;
    if (s.first == 0) pins.left = left.beta2;
    if (s.last == n - 1) pins.right = right.beta2;
    const CorrectionPair z = perturb_nondeg_impl(f.slice(s.first, s.last), g.slice(s.first, s.last),
                                                 d.slice(s.first, s.last), eps1, eps1, pins, mode);
    for (std::size_t k = s.first; k <= s.last; ++k) {
      d1[k] = z.z2[k - s.first];
      d2[k] = z.z1[k - s.first];
      assigned[k] = true;
    }
  }
  assign_pins();

  // Cover intervals: split psi = fg + d directly, matching the values already
  // fixed at their endpoints.
  for (const IndexRange& r : cover.intervals) {
    std::vector<Complex> psi(r.last - r.first + 1);
    for (std::size_t k = r.first; k <= r.last; ++k) psi[k - r.first] = f[k] * g[k] + d[k];
    auto boundary = [&](std::size_t k, Complex psi_k) -> std::pair<Complex, Complex> {
      if (assigned[k]) return {f[k] + d1[k], g[k] + d2[k]};
      return balanced_split(psi_k);
    };
    const auto [za, wa] = boundary(r.first, psi.front());
    const auto [zb, wb] = boundary(r.last, psi.back());
    const GridFunction psi_fn(f.domain().subdomain(r.first, r.last), std::move(psi));
    const FactorPair z = factor_interval_impl(psi_fn, 5.0 * eps1, za, wa, zb, wb, checked);
    for (std::size_t k = r.first; k <= r.last; ++k) {
      if (assigned[k]) continue;
      d1[k] = z.z1[k - r.first] - f[k];
      d2[k] = z.z2[k - r.first] - g[k];
    }
    for (std::size_t k = r.first; k <= r.last; ++k) assigned[k] = true;
  }

  GridFunction d1f(f.domain(), std::move(d1));
  GridFunction d2f(f.domain(), std::move(d2));
  const double residual = factorization_residual(f, g, d, d1f, d2f);
  const double b1 = sup_norm(d1f);
  const double b2 = sup_norm(d2f);
  if (checked) {
    GridFunction target = pointwise_product(f, g) + d;
    if (residual > kProductTolerance * (1.0 + sup_norm(target))) {
      throw Error(ErrorCode::ClaimViolation, "factorization identity residual too large");
    }
    if (!within(b1, config.epsilon0) || !within(b2, config.epsilon0)) {
      throw Error(ErrorCode::ClaimViolation, "correction exceeds eps0");
    }
  }
  return {std::move(d1f), std::move(d2f), residual, b1, b2, std::move(cover)};
}

FactorizationResult open_mult_interval(const GridFunction& f, const GridFunction& g,
                                       const GridFunction& d, double eps0, Enforcement mode) {
  require_same_domain(f, g);
  require_same_domain(f, d);
  const PipelineConfig config(eps0);
  if (mode == Enforcement::Checked && !within(sup_norm(d), config.delta0)) {
    throw Error(ErrorCode::PerturbationTooLarge, "perturbation exceeds delta0");
  }
  if (sup_norm(d) == 0.0) {
    const GridFunction zero = GridFunction::constant(f.domain(), 0.0);
    return {zero, zero, 0.0, 0.0, 0.0, {}};
  }
  const EndpointPin left = endpoint_pin(f.front(), g.front(), d.front(), config);
  const EndpointPin right = endpoint_pin(f.back(), g.back(), d.back(), config);
  return open_mult_pinned(f, g, d, config, left, right, mode);
}

}  // namespace openmult
