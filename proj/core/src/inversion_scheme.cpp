#include "openmult/inversion_scheme.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "openmult/error.hpp"

namespace openmult {

namespace {

constexpr double kGrace = 1e-12;

std::string describe(int n, Claim claim) {
  std::ostringstream os;
  os << "claim '" << to_string(claim) << "' fails at step " << n;
  return os.str();
}

}  // namespace

void AlgebraModel::require_shape(const AlgebraElement& a) const {
  if (a.coords.size() != dimension()) {
    throw Error(ErrorCode::DomainMismatch, "element has the wrong number of coordinates");
  }
}

AlgebraElement AlgebraModel::sum(const AlgebraElement& a, const AlgebraElement& b) const {
  require_shape(a);
  require_shape(b);
  AlgebraElement out{a.coords};
  for (std::size_t k = 0; k < out.coords.size(); ++k) out.coords[k] += b.coords[k];
  return out;
}

AlgebraElement AlgebraModel::difference(const AlgebraElement& a, const AlgebraElement& b) const {
  require_shape(a);
  require_shape(b);
  AlgebraElement out{a.coords};
  for (std::size_t k = 0; k < out.coords.size(); ++k) out.coords[k] -= b.coords[k];
  return out;
}

AlgebraElement AlgebraModel::scale(Complex c, const AlgebraElement& a) const {
  require_shape(a);
  AlgebraElement out{a.coords};
  for (auto& x : out.coords) x *= c;
  return out;
}

double AlgebraModel::sup_norm(const AlgebraElement& a) const {
  return openmult::sup_norm(embed(a));
}

// --- SupNormModel ---

SupNormModel::SupNormModel(std::size_t points) : points_(points) {
  if (points == 0) throw Error(ErrorCode::InvalidArgument, "finite space must be nonempty");
}

double SupNormModel::norm(const AlgebraElement& a) const {
  require_shape(a);
  return openmult::sup_norm(a.coords);
}

FiniteSpaceFunction SupNormModel::embed(const AlgebraElement& a) const {
  require_shape(a);
  return FiniteSpaceFunction(a.coords);
}

AlgebraElement SupNormModel::product(const AlgebraElement& a, const AlgebraElement& b) const {
  require_shape(a);
  require_shape(b);
  AlgebraElement out{a.coords};
  for (std::size_t k = 0; k < out.coords.size(); ++k) out.coords[k] *= b.coords[k];
  return out;
}

AlgebraElement SupNormModel::conj(const AlgebraElement& a) const {
  require_shape(a);
  AlgebraElement out{a.coords};
  for (auto& x : out.coords) x = std::conj(x);
  return out;
}

AlgebraElement SupNormModel::inverse(const AlgebraElement& a) const {
  require_shape(a);
  AlgebraElement out{a.coords};
  for (auto& x : out.coords) {
    if (x == Complex(0.0)) throw Error(ErrorCode::DegeneratePair, "element is not invertible");
    x = 1.0 / x;
  }
  return out;
}

AlgebraElement SupNormModel::one() const {
  return AlgebraElement{std::vector<Complex>(points_, Complex(1.0))};
}

// --- DiagonalModel ---

DiagonalModel::DiagonalModel(std::vector<double> weights) : weights_(std::move(weights)) {
  for (double w : weights_) {
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw Error(ErrorCode::InvalidArgument, "weights must be positive and finite");
    }
  }
}

double DiagonalModel::norm(const AlgebraElement& a) const {
  require_shape(a);
  double s = std::abs(a.coords[0]);
  for (std::size_t k = 0; k < weights_.size(); ++k) s += weights_[k] * std::abs(a.coords[k + 1]);
  return s;
}

FiniteSpaceFunction DiagonalModel::embed(const AlgebraElement& a) const {
  require_shape(a);
  std::vector<Complex> v;
  v.reserve(weights_.size() + 1);
  for (std::size_t k = 0; k < weights_.size(); ++k) v.push_back(a.coords[0] + a.coords[k + 1]);
  v.push_back(a.coords[0]);
  return FiniteSpaceFunction(std::move(v));
}

AlgebraElement DiagonalModel::product(const AlgebraElement& a, const AlgebraElement& b) const {
  require_shape(a);
  require_shape(b);
  const Complex l = a.coords[0];
  const Complex m = b.coords[0];
  AlgebraElement out{std::vector<Complex>(dimension())};
  out.coords[0] = l * m;
  for (std::size_t k = 1; k < dimension(); ++k) {
    const Complex x = a.coords[k];
    const Complex y = b.coords[k];
    out.coords[k] = l * y + m * x + x * y;
  }
  return out;
}

AlgebraElement DiagonalModel::conj(const AlgebraElement& a) const {
  require_shape(a);
  AlgebraElement out{a.coords};
  for (auto& x : out.coords) x = std::conj(x);
  return out;
}

AlgebraElement DiagonalModel::inverse(const AlgebraElement& a) const {
  require_shape(a);
  const Complex m = a.coords[0];
  if (m == Complex(0.0)) throw Error(ErrorCode::DegeneratePair, "element is not invertible");
  AlgebraElement out{std::vector<Complex>(dimension())};
  out.coords[0] = 1.0 / m;
  for (std::size_t k = 1; k < dimension(); ++k) {
    const Complex v = m + a.coords[k];
    if (v == Complex(0.0)) throw Error(ErrorCode::DegeneratePair, "element is not invertible");
    // 1/v - 1/m without cancellation.
    out.coords[k] = -a.coords[k] / (v * m);
  }
  return out;
}

AlgebraElement DiagonalModel::one() const {
  AlgebraElement out{std::vector<Complex>(dimension())};
  out.coords[0] = 1.0;
  return out;
}

double DiagonalModel::embedding_bound() const {
  if (weights_.empty()) return 1.0;
  const double wmin = *std::min_element(weights_.begin(), weights_.end());
  return std::max(1.0, 1.0 / wmin);
}

// --- scheme ---

double norm_control_h(double norm_a, double inverse_sup, const AlgebraModel& model) {
  if (!(norm_a > 0.0)) throw Error(ErrorCode::InvalidArgument, "norm must be positive");
  return model.psi(norm_a * inverse_sup) / norm_a;
}

SchemeParams scheme_params(const AlgebraElement& F, const AlgebraElement& G, double eps,
                           const AlgebraModel& model) {
  if (!(eps > 0.0 && eps < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "epsilon must lie in (0, 1)");
  }
  const double inf_sum = min_modulus_sum(model.embed(F), model.embed(G));
  if (!(inf_sum > 0.0)) {
    throw Error(ErrorCode::DegeneratePair, "|F| + |G| vanishes at some point");
  }
  SchemeParams p{};
  p.epsilon = eps;
  p.C = model.embedding_bound();
  p.gamma = std::min(1.0, 0.5 * inf_sum);
  p.K = 2.0 * std::max({model.norm(F), model.norm(G), 1.0});
  const double g2 = p.gamma * p.gamma;
  p.That = (2.0 * p.C / g2) * model.psi(4.0 * p.K * p.K / g2);
  p.T = std::max(p.That, 1.0);
  p.delta = eps * p.gamma / (p.C * p.K * p.K * p.K * p.T * p.T);
  return p;
}

ClaimReport audit_claims(const SchemeTrace& trace, const SchemeParams& params) {
  ClaimReport report{{}, true, std::nullopt};
  for (const auto& s : trace.steps) {
    const double two_n = std::ldexp(1.0, -s.n);
    ClaimCheck c{};
    c.n = s.n;
    c.identity_slack = 1e-9 * (1.0 + s.target_norm) - s.identity_residual;
    c.bounded_slack = params.K / 2.0 + 1.0 - two_n - std::max(s.norm_F, s.norm_G);
    c.nondegenerate_slack = s.inf_sum - params.gamma * (1.0 + two_n);
    c.decay_slack = two_n * params.delta - s.norm_H;
    c.identity = c.identity_slack >= 0.0;
    c.bounded = c.bounded_slack >= -kGrace * (1.0 + params.K);
    c.nondegenerate = c.nondegenerate_slack >= -kGrace * (1.0 + s.inf_sum);
    c.decay = c.decay_slack >= -kGrace * params.delta;
    report.checks.push_back(c);
    if (!report.first_failure) {
      std::optional<Claim> bad;
      if (!c.identity) bad = Claim::Identity;
      else if (!c.bounded) bad = Claim::Bounded;
      else if (!c.nondegenerate) bad = Claim::NonDegenerate;
      else if (!c.decay) bad = Claim::Decay;
      if (bad) {
        report.passed = false;
        report.first_failure = std::make_pair(s.n, *bad);
      }
    }
  }
  return report;
}

SchemeRun run_scheme(const AlgebraElement& F, const AlgebraElement& G, const AlgebraElement& H,
                     const SchemeParams& params, const AlgebraModel& model,
                     const SchemeOptions& options) {
  const double h0 = model.norm(H);
  if (!(h0 < params.delta)) {
    std::ostringstream os;
    os << "perturbation norm " << h0 << " is not below delta " << params.delta;
    throw Error(ErrorCode::PerturbationTooLarge, os.str());
  }
  const double tol = options.tol > 0.0 ? options.tol : 1e-12 * params.delta;
  const AlgebraElement target = model.sum(model.product(F, G), H);
  const double target_norm = model.norm(target);

  AlgebraElement f = F;
  AlgebraElement g = G;
  AlgebraElement h = H;
  SchemeTrace trace;

  for (int n = 0;; ++n) {
    SchemeStep s{};
    s.n = n;
    s.norm_F = model.norm(f);
    s.norm_G = model.norm(g);
    s.norm_H = model.norm(h);
    s.inf_sum = min_modulus_sum(model.embed(f), model.embed(g));
    s.identity_residual =
        model.norm(model.difference(model.sum(model.product(f, g), h), target));
    s.target_norm = target_norm;
    trace.steps.push_back(s);

    if (options.audit) {
      SchemeTrace last{{s}};
      const auto rep = audit_claims(last, params);
      if (!rep.passed) {
        throw Error(ErrorCode::ClaimViolation, describe(n, rep.first_failure->second));
      }
    }
    if (s.norm_H <= tol) break;
    if (n >= options.max_iterations) {
      throw Error(ErrorCode::NonConvergence, "scheme did not converge within the iteration cap");
    }

    const AlgebraElement fc = model.conj(f);
    const AlgebraElement gc = model.conj(g);
    const AlgebraElement u = model.sum(model.product(f, fc), model.product(g, gc));
    const AlgebraElement inv = model.inverse(u);
    const AlgebraElement hinv = model.product(h, inv);
    const AlgebraElement df = model.product(hinv, gc);
    const AlgebraElement dg = model.product(hinv, fc);
    const AlgebraElement h_next = model.scale(
        -1.0, model.product(model.product(hinv, hinv), model.product(fc, gc)));
    trace.steps.back().step_F = model.norm(df);
    trace.steps.back().step_G = model.norm(dg);
    f = model.sum(f, df);
    g = model.sum(g, dg);
    h = h_next;
  }

  const double residual = model.norm(model.difference(model.product(f, g), target));
  return SchemeRun{std::move(f), std::move(g), std::move(trace), residual};
}

std::string_view to_string(Claim claim) {
  switch (claim) {
    case Claim::Identity: return "identity";
    case Claim::Bounded: return "bounded";
    case Claim::NonDegenerate: return "nondegenerate";
    case Claim::Decay: return "decay";
  }
  return "unknown";
}

}  // namespace openmult
