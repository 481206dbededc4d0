#pragma once

// Iterative correction of a jointly non-degenerate pair (F, G) so that the
// product absorbs a small perturbation H, inside any commutative Banach
// *-algebra A that embeds into C(X) with norm-controlled inversion.
//
// The recursion is
//   F' = F + H conj(G) / u,   G' = G + H conj(F) / u,
//   H' = -H^2 conj(F G) / u^2,    u = |F|^2 + |G|^2,
// which keeps F G + H fixed and squares the size of H at every step.

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "openmult/function.hpp"

namespace openmult {

/// Coordinates of an algebra element; their meaning is fixed by the model.
struct AlgebraElement {
  std::vector<Complex> coords;
};

class AlgebraModel {
 public:
  virtual ~AlgebraModel() = default;

  virtual std::string name() const = 0;
  virtual std::size_t dimension() const = 0;
  virtual double norm(const AlgebraElement& a) const = 0;
  /// The injective *-homomorphism into C(X), X finite.
  virtual FiniteSpaceFunction embed(const AlgebraElement& a) const = 0;
  virtual AlgebraElement product(const AlgebraElement& a, const AlgebraElement& b) const = 0;
  virtual AlgebraElement conj(const AlgebraElement& a) const = 0;
  /// Throws DegeneratePair when embed(a) vanishes somewhere.
  virtual AlgebraElement inverse(const AlgebraElement& a) const = 0;
  virtual AlgebraElement one() const = 0;
  /// C >= 1 with ||embed(a)||_inf <= C ||a||.
  virtual double embedding_bound() const = 0;
  /// D in ||ab|| <= D (||a|| ||b||_inf + ||a||_inf ||b||).
  virtual double differential_constant() const = 0;
  /// Norm-control function: ||a^-1|| <= psi(||a|| ||a^-1||_inf) / ||a||.
  virtual double psi(double t) const = 0;

  AlgebraElement sum(const AlgebraElement& a, const AlgebraElement& b) const;
  AlgebraElement difference(const AlgebraElement& a, const AlgebraElement& b) const;
  AlgebraElement scale(Complex c, const AlgebraElement& a) const;
  double sup_norm(const AlgebraElement& a) const;

 protected:
  void require_shape(const AlgebraElement& a) const;
};

/// C(X) itself: coordinates are point values, sup norm, exact inversion.
class SupNormModel final : public AlgebraModel {
 public:
  explicit SupNormModel(std::size_t points);

  std::string name() const override { return "sup"; }
  std::size_t dimension() const override { return points_; }
  double norm(const AlgebraElement& a) const override;
  FiniteSpaceFunction embed(const AlgebraElement& a) const override;
  AlgebraElement product(const AlgebraElement& a, const AlgebraElement& b) const override;
  AlgebraElement conj(const AlgebraElement& a) const override;
  AlgebraElement inverse(const AlgebraElement& a) const override;
  AlgebraElement one() const override;
  double embedding_bound() const override { return 1.0; }
  double differential_constant() const override { return 1.0; }
  double psi(double t) const override { return t; }

 private:
  std::size_t points_;
};

/// Unitisation of a weighted-l1 sequence algebra with coordinate-wise product.
/// Coordinates are [scalar, a_1, ..., a_m]; the norm is
/// |scalar| + sum_k w_k |a_k| and the embedding evaluates scalar + a_k at each
/// k plus the point at infinity, where it equals the scalar.
class DiagonalModel final : public AlgebraModel {
 public:
  explicit DiagonalModel(std::vector<double> weights);

  const std::vector<double>& weights() const noexcept { return weights_; }

  std::string name() const override { return "diagonal"; }
  std::size_t dimension() const override { return weights_.size() + 1; }
  double norm(const AlgebraElement& a) const override;
  FiniteSpaceFunction embed(const AlgebraElement& a) const override;
  AlgebraElement product(const AlgebraElement& a, const AlgebraElement& b) const override;
  AlgebraElement conj(const AlgebraElement& a) const override;
  AlgebraElement inverse(const AlgebraElement& a) const override;
  AlgebraElement one() const override;
  double embedding_bound() const override;
  double differential_constant() const override { return 1.0; }
  double psi(double t) const override { return t * t; }

 private:
  std::vector<double> weights_;
};

/// (1 / ||a||) psi(||a|| ||a^-1||_inf).
double norm_control_h(double norm_a, double inverse_sup, const AlgebraModel& model);

struct SchemeParams {
  double epsilon;
  double C;
  double gamma;  // min(1, inf(|F| + |G|) / 2)
  double K;      // 2 max(||F||, ||G||, 1)
  double That;   // (2C / gamma^2) psi(4 K^2 / gamma^2)
  double T;      // max(That, 1)
  double delta;  // eps gamma / (C K^3 T^2)
};

/// Throws DegeneratePair when |F| + |G| vanishes at an embedding point.
SchemeParams scheme_params(const AlgebraElement& F, const AlgebraElement& G, double eps,
                           const AlgebraModel& model);

struct SchemeStep {
  int n;
  double norm_F;
  double norm_G;
  double norm_H;
  double inf_sum;            // inf over embedding points of |F_n| + |G_n|
  double identity_residual;  // ||F_n G_n + H_n - (F G + H)||
  double target_norm;        // ||F G + H||
  double step_F;             // ||F_{n+1} - F_n||, 0 on the last step
  double step_G;
};

struct SchemeTrace {
  std::vector<SchemeStep> steps;
};

enum class Claim { Identity = 1, Bounded = 2, NonDegenerate = 3, Decay = 4 };

struct ClaimCheck {
  int n;
  bool identity;
  bool bounded;
  bool nondegenerate;
  bool decay;
  double identity_slack;       // 1e-9 (1 + ||FG + H||) - residual
  double bounded_slack;        // K/2 + 1 - 2^-n - max(||F_n||, ||G_n||)
  double nondegenerate_slack;  // inf_sum - gamma (1 + 2^-n)
  double decay_slack;          // 2^-n delta - ||H_n||
};

struct ClaimReport {
  std::vector<ClaimCheck> checks;
  bool passed;
  std::optional<std::pair<int, Claim>> first_failure;
};

ClaimReport audit_claims(const SchemeTrace& trace, const SchemeParams& params);

struct SchemeOptions {
  double tol = 0.0;  // 0 selects 1e-12 * delta
  int max_iterations = 200;
  bool audit = true;  // throw ClaimViolation on the first failed claim
};

struct SchemeRun {
  AlgebraElement f;
  AlgebraElement g;
  SchemeTrace trace;
  double product_residual;  // ||f g - (F G + H)||
};

/// Requires ||H|| < params.delta (PerturbationTooLarge otherwise).
SchemeRun run_scheme(const AlgebraElement& F, const AlgebraElement& G, const AlgebraElement& H,
                     const SchemeParams& params, const AlgebraModel& model,
                     const SchemeOptions& options = {});

std::string_view to_string(Claim claim);

}  // namespace openmult
