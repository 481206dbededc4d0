#include "openmult/function.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "openmult/error.hpp"

namespace openmult {

namespace {

void require_finite(std::span<const Complex> values, const char* what) {
  for (const Complex& v : values) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw Error(ErrorCode::InvalidArgument, std::string(what) + ": non-finite value");
    }
  }
}

void require_same_size(std::size_t a, std::size_t b) {
  if (a != b) {
    throw Error(ErrorCode::DomainMismatch,
                "domain mismatch: " + std::to_string(a) + " vs " + std::to_string(b) + " nodes");
  }
}

template <class Op>
std::vector<Complex> zip(std::span<const Complex> f, std::span<const Complex> g, Op op) {
  std::vector<Complex> out(f.size());
  for (std::size_t k = 0; k < f.size(); ++k) out[k] = op(f[k], g[k]);
  return out;
}

double min_modulus_sum(std::span<const Complex> f, std::span<const Complex> g, ModulusSum variant) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < f.size(); ++k) {
    const double s = variant == ModulusSum::Linear ? std::abs(f[k]) + std::abs(g[k])
                                                   : std::norm(f[k]) + std::norm(g[k]);
    best = std::min(best, s);
  }
  return best;
}

}  // namespace

IntervalDomain::IntervalDomain(double a, double b, std::size_t n) : a_(a), b_(b), n_(n) {
  if (!(a < b) || !std::isfinite(a) || !std::isfinite(b)) {
    throw Error(ErrorCode::InvalidArgument, "interval requires finite a < b");
  }
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "interval grid needs at least 2 nodes");
}

double IntervalDomain::node(std::size_t k) const noexcept {
  if (k + 1 == n_) return b_;
  return a_ + static_cast<double>(k) * (b_ - a_) / static_cast<double>(n_ - 1);
}

IntervalDomain IntervalDomain::subdomain(std::size_t first, std::size_t last) const {
  if (first >= last || last >= n_) {
    throw Error(ErrorCode::InvalidArgument, "subdomain needs first < last < n");
  }
  return IntervalDomain(node(first), node(last), last - first + 1);
}

GridFunction::GridFunction(IntervalDomain domain, std::vector<Complex> values)
    : domain_(domain), values_(std::move(values)) {
  if (values_.size() != domain_.n()) {
    throw Error(ErrorCode::InvalidArgument, "value count does not match grid size");
  }
  require_finite(values_, "GridFunction");
}

GridFunction GridFunction::constant(const IntervalDomain& domain, Complex c) {
  return GridFunction(domain, std::vector<Complex>(domain.n(), c));
}

GridFunction GridFunction::slice(std::size_t first, std::size_t last) const {
  return GridFunction(domain_.subdomain(first, last),
                      std::vector<Complex>(values_.begin() + static_cast<std::ptrdiff_t>(first),
                                           values_.begin() + static_cast<std::ptrdiff_t>(last) + 1));
}

FiniteSpaceFunction::FiniteSpaceFunction(std::vector<Complex> values) : values_(std::move(values)) {
  if (values_.empty()) throw Error(ErrorCode::InvalidArgument, "finite space must be nonempty");
  require_finite(values_, "FiniteSpaceFunction");
}

GraphDomain::GraphDomain(std::vector<std::string> vertices, std::vector<GraphEdge> edges)
    : vertices_(std::move(vertices)), edges_(std::move(edges)) {
  for (const GraphEdge& e : edges_) {
    if (e.u >= vertices_.size() || e.v >= vertices_.size()) {
      throw Error(ErrorCode::InvalidArgument, "edge " + e.id + " endpoint is not a vertex");
    }
    for (const Junction& j : e.junctions) {
      if (j.vertex >= vertices_.size()) {
        throw Error(ErrorCode::InvalidArgument, "edge " + e.id + " junction is not a vertex");
      }
      if (j.node == 0 || j.node + 1 >= e.grid.n()) {
        throw Error(ErrorCode::InvalidArgument, "edge " + e.id + " junction must be an interior node");
      }
    }
  }
}

std::vector<VertexIncidence> GraphDomain::incidences(std::size_t vertex) const {
  std::vector<VertexIncidence> out;
  for (std::size_t k = 0; k < edges_.size(); ++k) {
    const GraphEdge& e = edges_[k];
    if (e.u == vertex) out.push_back({k, 0});
    for (const Junction& j : e.junctions) {
      if (j.vertex == vertex) out.push_back({k, j.node});
    }
    if (e.v == vertex) out.push_back({k, e.grid.n() - 1});
  }
  return out;
}

bool GraphDomain::is_partitioned() const noexcept {
  return std::all_of(edges_.begin(), edges_.end(),
                     [](const GraphEdge& e) { return e.junctions.empty(); });
}

GraphFunction::GraphFunction(GraphDomain domain, std::vector<GridFunction> edge_values)
    : domain_(std::move(domain)), edge_values_(std::move(edge_values)) {
  if (edge_values_.size() != domain_.edges().size()) {
    throw Error(ErrorCode::DomainMismatch, "one GridFunction per edge required");
  }
  for (std::size_t k = 0; k < edge_values_.size(); ++k) {
    if (!(edge_values_[k].domain() == domain_.edges()[k].grid)) {
      throw Error(ErrorCode::DomainMismatch, "edge " + domain_.edges()[k].id + " grid mismatch");
    }
  }
  for (std::size_t v = 0; v < domain_.vertices().size(); ++v) {
    const auto inc = domain_.incidences(v);
    if (inc.empty()) continue;
    const Complex ref = edge_values_[inc.front().edge][inc.front().node];
    for (const VertexIncidence& i : inc) {
      const Complex val = edge_values_[i.edge][i.node];
      if (std::abs(val - ref) > kVertexTolerance * (1.0 + std::abs(ref))) {
        throw Error(ErrorCode::VertexInconsistency,
                    "values disagree at vertex " + domain_.vertices()[v]);
      }
    }
  }
}

Complex GraphFunction::vertex_value(std::size_t vertex) const {
  const auto inc = domain_.incidences(vertex);
  if (inc.empty()) throw Error(ErrorCode::InvalidArgument, "isolated vertex has no value");
  return edge_values_[inc.front().edge][inc.front().node];
}

double GraphFunction::vertex_disagreement() const {
  double worst = 0.0;
  for (std::size_t v = 0; v < domain_.vertices().size(); ++v) {
    const auto inc = domain_.incidences(v);
    for (std::size_t i = 1; i < inc.size(); ++i) {
      worst = std::max(worst, std::abs(edge_values_[inc[i].edge][inc[i].node] -
                                       edge_values_[inc[0].edge][inc[0].node]));
    }
  }
  return worst;
}

double sup_norm(std::span<const Complex> values) {
  double m = 0.0;
  for (const Complex& v : values) m = std::max(m, std::abs(v));
  return m;
}

double sup_norm(const GridFunction& f) { return sup_norm(f.values()); }
double sup_norm(const FiniteSpaceFunction& f) { return sup_norm(f.values()); }

double sup_norm(const GraphFunction& f) {
  double m = 0.0;
  for (const GridFunction& e : f.edges()) m = std::max(m, sup_norm(e));
  return m;
}

void require_same_domain(const GridFunction& f, const GridFunction& g) {
  if (!(f.domain() == g.domain())) {
    throw Error(ErrorCode::DomainMismatch, "functions live on different grids");
  }
}

GridFunction pointwise_product(const GridFunction& f, const GridFunction& g) {
  require_same_domain(f, g);
  return GridFunction(f.domain(), zip(f.values(), g.values(), std::multiplies<>()));
}

FiniteSpaceFunction pointwise_product(const FiniteSpaceFunction& f, const FiniteSpaceFunction& g) {
  require_same_size(f.size(), g.size());
  return FiniteSpaceFunction(zip(f.values(), g.values(), std::multiplies<>()));
}

GraphFunction pointwise_product(const GraphFunction& f, const GraphFunction& g) {
  require_same_size(f.edges().size(), g.edges().size());
  std::vector<GridFunction> out;
  out.reserve(f.edges().size());
  for (std::size_t k = 0; k < f.edges().size(); ++k) {
    out.push_back(pointwise_product(f.edge(k), g.edge(k)));
  }
  return GraphFunction(f.domain(), std::move(out));
}

double min_modulus_sum(const GridFunction& f, const GridFunction& g, ModulusSum variant) {
  require_same_domain(f, g);
  return min_modulus_sum(f.values(), g.values(), variant);
}

double min_modulus_sum(const FiniteSpaceFunction& f, const FiniteSpaceFunction& g,
                       ModulusSum variant) {
  require_same_size(f.size(), g.size());
  return min_modulus_sum(f.values(), g.values(), variant);
}

GridFunction operator+(const GridFunction& f, const GridFunction& g) {
  require_same_domain(f, g);
  return GridFunction(f.domain(), zip(f.values(), g.values(), std::plus<>()));
}

GridFunction operator-(const GridFunction& f, const GridFunction& g) {
  require_same_domain(f, g);
  return GridFunction(f.domain(), zip(f.values(), g.values(), std::minus<>()));
}

GridFunction operator*(Complex c, const GridFunction& f) {
  std::vector<Complex> v(f.values().begin(), f.values().end());
  for (Complex& x : v) x *= c;
  return GridFunction(f.domain(), std::move(v));
}

FiniteSpaceFunction operator+(const FiniteSpaceFunction& f, const FiniteSpaceFunction& g) {
  require_same_size(f.size(), g.size());
  return FiniteSpaceFunction(zip(f.values(), g.values(), std::plus<>()));
}

FiniteSpaceFunction operator-(const FiniteSpaceFunction& f, const FiniteSpaceFunction& g) {
  require_same_size(f.size(), g.size());
  return FiniteSpaceFunction(zip(f.values(), g.values(), std::minus<>()));
}

FiniteSpaceFunction operator*(Complex c, const FiniteSpaceFunction& f) {
  std::vector<Complex> v(f.values().begin(), f.values().end());
  for (Complex& x : v) x *= c;
  return FiniteSpaceFunction(std::move(v));
}

GridFunction conj(const GridFunction& f) {
  std::vector<Complex> v(f.values().begin(), f.values().end());
  for (Complex& x : v) x = std::conj(x);
  return GridFunction(f.domain(), std::move(v));
}

FiniteSpaceFunction conj(const FiniteSpaceFunction& f) {
  std::vector<Complex> v(f.values().begin(), f.values().end());
  for (Complex& x : v) x = std::conj(x);
  return FiniteSpaceFunction(std::move(v));
}

std::vector<double> squared_modulus_sum(const GridFunction& f, const GridFunction& g) {
  require_same_domain(f, g);
  std::vector<double> h(f.size());
  for (std::size_t k = 0; k < h.size(); ++k) h[k] = std::norm(f[k]) + std::norm(g[k]);
  return h;
}

GridFunction refine(const GridFunction& f, std::size_t factor) {
  if (factor < 2) throw Error(ErrorCode::InvalidArgument, "refinement factor must be >= 2");
  const std::size_t n = f.size();
  const IntervalDomain fine(f.domain().a(), f.domain().b(), (n - 1) * factor + 1);
  std::vector<Complex> v(fine.n());
  for (std::size_t k = 0; k + 1 < n; ++k) {
    v[k * factor] = f[k];
    for (std::size_t j = 1; j < factor; ++j) {
      const double s = static_cast<double>(j) / static_cast<double>(factor);
      v[k * factor + j] = (1.0 - s) * f[k] + s * f[k + 1];
    }
  }
  v.back() = f.back();
  return GridFunction(fine, std::move(v));
}

GridFunction resample(const GridFunction& f, std::size_t n) {
  const IntervalDomain target(f.domain().a(), f.domain().b(), n);
  const double h = f.domain().spacing();
  std::vector<Complex> v(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double pos = (target.node(k) - f.domain().a()) / h;
    const std::size_t i = std::min(static_cast<std::size_t>(std::max(pos, 0.0)), f.size() - 2);
    const double s = std::clamp(pos - static_cast<double>(i), 0.0, 1.0);
    v[k] = s == 0.0 ? f[i] : (s == 1.0 ? f[i + 1] : (1.0 - s) * f[i] + s * f[i + 1]);
  }
  return GridFunction(target, std::move(v));
}

}  // namespace openmult
