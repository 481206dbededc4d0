#pragma once

// Empirical estimates of openness moduli, used to check the constructive
// constants from below.

#include <cstdint>
#include <vector>

#include "openmult/function.hpp"

namespace openmult {

/// Largest r (to 1e-4 relative) such that x y + w is a product of points in the
/// eps-balls around x and y for `grid` equally spaced phases of w, |w| = r.
/// Feasibility is decided by a polar grid search with local refinement.
double brute_scalar_delta(double eps, Complex x, Complex y, int grid = 16);

struct ProbePoint {
  double radius;
  double success_rate;
};

struct ProbeReport {
  double eps;
  double delta_constructive;  // delta0(eps)
  double delta_empirical;     // largest tested radius with every trial passing
  int samples;                // total pipeline runs
  std::uint64_t seed;
  std::vector<ProbePoint> curve;
};

/// Runs the interval pipeline (without its size gate) on random d with
/// sup_norm(d) = r for a ladder of radii r >= delta0(eps0), stopping at the
/// first radius where a trial fails. Deterministic given the seed.
ProbeReport probe_pipeline(const GridFunction& f, const GridFunction& g, double eps0, int trials,
                           std::uint64_t seed);

}  // namespace openmult
