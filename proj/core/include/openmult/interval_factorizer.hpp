#pragma once

// Constructive uniform openness of multiplication in C[a, b].
//
// Given f, g and a perturbation d with ||d|| <= delta0(eps0), the pipeline
// returns d1, d2 with (f + d1)(g + d2) = fg + d and ||d1||, ||d2|| <= eps0.
// Away from the joint zeros of f and g the factors are corrected by a small
// root of a pointwise quadratic; near joint zeros fg + d is split into two
// factors of controlled modulus directly.

#include <optional>
#include <utility>
#include <vector>

#include "openmult/function.hpp"

namespace openmult {

/// Inclusive node-index range [first, last].
struct IndexRange {
  std::size_t first;
  std::size_t last;
  friend bool operator==(const IndexRange&, const IndexRange&) = default;
};

/// Pairwise disjoint, strictly increasing closed node ranges.
struct IntervalCover {
  std::vector<IndexRange> intervals;

  bool contains(std::size_t node) const;
  bool empty() const noexcept { return intervals.empty(); }
};

struct PipelineConfig {
  explicit PipelineConfig(double epsilon0);

  double epsilon0;
  double epsilon1;  // epsilon0 / 7
  double eta1;      // epsilon1^2, lower sublevel for |f|^2 + |g|^2
  double eta2;      // 4 epsilon1^2, upper sublevel
  double delta0;    // admissible sup norm of d
};

struct FactorizationResult {
  GridFunction d1;
  GridFunction d2;
  double residual;  // max node error of (f + d1)(g + d2) - (fg + d)
  double bound1;    // sup_norm(d1)
  double bound2;    // sup_norm(d2)
  IntervalCover cover;
};

enum class Side { Left, Right };

/// Largest |d| for which the quadratic correction stays within eps when
/// |f| >= eta: min(eps * eta / 2, eta^2 / 5).
double correction_radius(double eta, double eps);

/// Uniform modulus of the interval pipeline, eps0^2 / 245.
double delta0(double eps0);

/// phi = Z(-d, f, g) node-wise, the small root of g phi^2 + f phi - d = 0.
/// Requires |f| >= eta, |g| = 1 and sup_norm(d) <= correction_radius(eta, eps).
GridFunction quadratic_correction(const GridFunction& f, const GridFunction& g,
                                  const GridFunction& d, double eta, double eps);

/// c = i conj(w) z / |conj(w) z|, so that |z + c w|^2 = |z|^2 + |w|^2.
Complex phase_offset(Complex z, Complex w);

/// Fills each gap (inclusive range of undefined nodes) with the shortest arc on
/// the unit circle between the neighbouring defined values, linear in the node
/// position. Antipodal endpoints go counterclockwise. A gap touching the
/// domain boundary is filled with its single defined neighbour.
GridFunction circle_extend(const GridFunction& partial, std::span<const IndexRange> gaps);

/// Closed node ranges covering {h <= eta1} inside {h < eta2}. Each maximal run
/// of sublevel nodes (plus any seed nodes) grows by one node on each side that
/// is not a domain boundary; overlapping or touching ranges are merged.
/// Throws CoverInfeasible if a grown endpoint has h >= eta2.
IntervalCover sublevel_cover(std::span<const double> h, double eta1, double eta2,
                             std::span<const std::size_t> seeds = {});
IntervalCover sublevel_cover(const GridFunction& h, double eta1, double eta2);

/// Fixed unimodular values for beta2 at the segment ends.
struct PhasePins {
  std::optional<Complex> left;
  std::optional<Complex> right;
};

struct NondegPhases {
  GridFunction beta1;  // identically 1
  GridFunction beta2;
  std::vector<IndexRange> gaps;  // nodes where beta2 came from circle_extend
};

/// Unimodular beta1, beta2 with |h1 beta1 + h2 beta2| >= eta at every node,
/// assuming |h1|^2 + |h2|^2 >= eta^2.
NondegPhases nondeg_phases(const GridFunction& h1, const GridFunction& h2, double eta,
                           const PhasePins& pins = {});

struct CorrectionPair {
  GridFunction z1;
  GridFunction z2;
};

/// z1, z2 with h1 z1 + h2 z2 + z1 z2 = d and |z1|, |z2| <= eps.
CorrectionPair perturb_nondeg(const GridFunction& h1, const GridFunction& h2,
                              const GridFunction& d, double eta, double eps,
                              const PhasePins& pins = {});

struct FactorPair {
  GridFunction z1;
  GridFunction z2;
};

/// Z1 Z2 = psi with |Z1|, |Z2| <= eps; (Za, Wa) prescribed at the `side` end
/// and Z1 = Z2 = zhat at the other end.
FactorPair factor_halfboundary(const GridFunction& psi, double eps, Complex za, Complex wa,
                               Complex zhat, Side side);

/// Z1 Z2 = psi with |Z1|, |Z2| <= eps and all four boundary values prescribed.
FactorPair factor_interval(const GridFunction& psi, double eps, Complex za, Complex wa,
                           Complex zb, Complex wb);

/// Values of d1, d2 fixed in advance at a segment end (graph vertices and
/// domain endpoints).
struct EndpointPin {
  Complex d1;
  Complex d2;
  Complex beta2;    // phase used by the non-degenerate branch
  bool degenerate;  // |f|^2 + |g|^2 <= eta1 at the point
};

/// Pointwise rule for d1, d2 at an isolated point: a split of fg + d by
/// principal square roots when degenerate, otherwise the quadratic
/// correction with beta2 = phase_offset(f, g).
EndpointPin endpoint_pin(Complex f, Complex g, Complex d, const PipelineConfig& config);

enum class Enforcement {
  Checked,  // every stated precondition is verified
  Relaxed,  // perturbation-size gates skipped; used by the empirical probe
};

FactorizationResult open_mult_pinned(const GridFunction& f, const GridFunction& g,
                                     const GridFunction& d, const PipelineConfig& config,
                                     const EndpointPin& left, const EndpointPin& right,
                                     Enforcement mode = Enforcement::Checked);

/// Throws PerturbationTooLarge if sup_norm(d) > delta0(eps0). For d = 0 the
/// result is d1 = d2 = 0 with an empty cover.
FactorizationResult open_mult_interval(const GridFunction& f, const GridFunction& g,
                                       const GridFunction& d, double eps0,
                                       Enforcement mode = Enforcement::Checked);

/// max node |(f + d1)(g + d2) - (fg + d)|.
double factorization_residual(const GridFunction& f, const GridFunction& g, const GridFunction& d,
                              const GridFunction& d1, const GridFunction& d2);

}  // namespace openmult
