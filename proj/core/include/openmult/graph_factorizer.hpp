#pragma once

// Uniform openness of multiplication on C(X) for X a finite graph: the
// interval pipeline runs edge by edge with values at vertices fixed first, so
// that every incident edge sees identical boundary data.

#include <optional>
#include <string>
#include <vector>

#include "openmult/function.hpp"
#include "openmult/interval_factorizer.hpp"

namespace openmult {

/// Splits every edge at its junction nodes so that edges meet only at
/// endpoints. Sub-edges are named "<id>.<k>".
GraphDomain refine_partition(const GraphDomain& graph);
GraphFunction refine_partition(const GraphFunction& f);

/// Boundary assignment of one edge; nullopt means the end is free.
struct EdgePlan {
  std::string edge_id;
  std::optional<EndpointPin> start;
  std::optional<EndpointPin> end;
};

struct VertexReport {
  std::string vertex;
  bool degenerate;
  Complex d1;
  Complex d2;
  double disagreement;  // max spread of d1, d2 over incident edges
};

struct GraphFactorization {
  GraphFunction d1;
  GraphFunction d2;
  std::vector<FactorizationResult> edges;  // indexed like d1.domain().edges()
  std::vector<EdgePlan> plans;
  std::vector<VertexReport> vertices;
  double max_residual;
  double max_disagreement;
};

/// Same modulus as the interval case: requires sup_norm(d) <= delta0(eps0).
GraphFactorization open_mult_graph(const GraphFunction& f, const GraphFunction& g,
                                   const GraphFunction& d, double eps0,
                                   Enforcement mode = Enforcement::Checked);

}  // namespace openmult
