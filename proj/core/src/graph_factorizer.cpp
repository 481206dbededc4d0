#include "openmult/graph_factorizer.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "openmult/error.hpp"

namespace openmult {

namespace {

// Node indices where an edge is cut, including both ends.
std::vector<Junction> cut_points(const GraphEdge& e) {
  std::vector<Junction> cuts = e.junctions;
  std::sort(cuts.begin(), cuts.end(),
            [](const Junction& a, const Junction& b) { return a.node < b.node; });
  for (std::size_t i = 1; i < cuts.size(); ++i) {
    if (cuts[i].node == cuts[i - 1].node) {
      throw Error(ErrorCode::InvalidArgument,
                  "edge " + e.id + " identifies one node with two vertices");
    }
  }
  cuts.insert(cuts.begin(), Junction{0, e.u});
  cuts.push_back(Junction{e.grid.n() - 1, e.v});
  return cuts;
}

}  // namespace

GraphDomain refine_partition(const GraphDomain& graph) {
  std::vector<GraphEdge> edges;
  for (const GraphEdge& e : graph.edges()) {
    if (e.junctions.empty()) {
      edges.push_back(e);
      continue;
    }
    const std::vector<Junction> cuts = cut_points(e);
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      edges.push_back(GraphEdge{e.id + "." + std::to_string(i), cuts[i].vertex,
                                cuts[i + 1].vertex,
                                e.grid.subdomain(cuts[i].node, cuts[i + 1].node), {}});
    }
  }
  return GraphDomain(graph.vertices(), std::move(edges));
}

GraphFunction refine_partition(const GraphFunction& f) {
  std::vector<GridFunction> values;
  for (std::size_t k = 0; k < f.domain().edges().size(); ++k) {
    const GraphEdge& e = f.domain().edges()[k];
    if (e.junctions.empty()) {
      values.push_back(f.edge(k));
      continue;
    }
    const std::vector<Junction> cuts = cut_points(e);
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      values.push_back(f.edge(k).slice(cuts[i].node, cuts[i + 1].node));
    }
  }
  return GraphFunction(refine_partition(f.domain()), std::move(values));
}

GraphFactorization open_mult_graph(const GraphFunction& f_in, const GraphFunction& g_in,
                                   const GraphFunction& d_in, double eps0, Enforcement mode) {
  const PipelineConfig config(eps0);
  if (mode == Enforcement::Checked && sup_norm(d_in) > config.delta0 * (1.0 + 1e-12)) {
    throw Error(ErrorCode::PerturbationTooLarge, "perturbation exceeds delta0");
  }
  const GraphFunction f = refine_partition(f_in);
  const GraphFunction g = refine_partition(g_in);
  const GraphFunction d = refine_partition(d_in);
  const GraphDomain& graph = f.domain();
  if (g.edges().size() != f.edges().size() || d.edges().size() != f.edges().size()) {
    throw Error(ErrorCode::DomainMismatch, "f, g, d live on different graphs");
  }

  if (sup_norm(d) == 0.0) {
    std::vector<GridFunction> zero;
    for (const GraphEdge& e : graph.edges()) zero.push_back(GridFunction::constant(e.grid, 0.0));
    GraphFunction z(graph, zero);
    GraphFactorization out{z, z, {}, {}, {}, 0.0, 0.0};
    for (const GridFunction& e : zero) out.edges.push_back({e, e, 0.0, 0.0, 0.0, {}});
    for (const GraphEdge& e : graph.edges()) out.plans.push_back({e.id, std::nullopt, std::nullopt});
    return out;
  }

  // Vertex prepass: one pin per vertex, shared by all incident edges.
  const std::size_t nv = graph.vertices().size();
  std::vector<std::optional<EndpointPin>> pins(nv);
  for (std::size_t v = 0; v < nv; ++v) {
    if (graph.incidences(v).empty()) continue;
    pins[v] = endpoint_pin(f.vertex_value(v), g.vertex_value(v), d.vertex_value(v), config);
  }

  GraphFactorization out{f, f, {}, {}, {}, 0.0, 0.0};
  std::vector<GridFunction> d1;
  std::vector<GridFunction> d2;
  for (std::size_t k = 0; k < graph.edges().size(); ++k) {
    const GraphEdge& e = graph.edges()[k];
    EdgePlan plan{e.id, pins[e.u], pins[e.v]};
    FactorizationResult r =
        open_mult_pinned(f.edge(k), g.edge(k), d.edge(k), config, *plan.start, *plan.end, mode);
    out.max_residual = std::max(out.max_residual, r.residual);
    d1.push_back(r.d1);
    d2.push_back(r.d2);
    out.edges.push_back(std::move(r));
    out.plans.push_back(std::move(plan));
  }

  for (std::size_t v = 0; v < nv; ++v) {
    if (!pins[v]) continue;
    double spread = 0.0;
    for (const VertexIncidence& i : graph.incidences(v)) {
      spread = std::max({spread, std::abs(d1[i.edge][i.node] - pins[v]->d1),
                         std::abs(d2[i.edge][i.node] - pins[v]->d2)});
    }
    out.vertices.push_back({graph.vertices()[v], pins[v]->degenerate, pins[v]->d1, pins[v]->d2,
                            spread});
    out.max_disagreement = std::max(out.max_disagreement, spread);
  }
  if (out.max_disagreement > kVertexTolerance) {
    throw Error(ErrorCode::VertexInconsistency, "edge corrections disagree at a vertex");
  }
  out.d1 = GraphFunction(graph, std::move(d1));
  out.d2 = GraphFunction(graph, std::move(d2));
  return out;
}

}  // namespace openmult
