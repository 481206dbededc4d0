#pragma once

// Sampled continuous complex functions on intervals, finite discrete spaces
// and finite graphs, with the pointwise *-algebra and the sup norm.

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace openmult {

using Complex = std::complex<double>;

/// Uniform grid a + k(b-a)/(n-1), k = 0..n-1.
class IntervalDomain {
 public:
  IntervalDomain(double a, double b, std::size_t n);

  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  std::size_t n() const noexcept { return n_; }
  double spacing() const noexcept { return (b_ - a_) / static_cast<double>(n_ - 1); }
  double node(std::size_t k) const noexcept;

  /// Sub-grid spanning nodes [first, last] of this grid.
  IntervalDomain subdomain(std::size_t first, std::size_t last) const;

  friend bool operator==(const IntervalDomain&, const IntervalDomain&) = default;

 private:
  double a_;
  double b_;
  std::size_t n_;
};

class GridFunction {
 public:
  GridFunction(IntervalDomain domain, std::vector<Complex> values);

  static GridFunction constant(const IntervalDomain& domain, Complex c);

  template <class Fn>
  static GridFunction sample(const IntervalDomain& domain, Fn&& fn) {
    std::vector<Complex> v(domain.n());
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = Complex(fn(domain.node(k)));
    return GridFunction(domain, std::move(v));
  }

  const IntervalDomain& domain() const noexcept { return domain_; }
  std::span<const Complex> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  Complex operator[](std::size_t k) const { return values_[k]; }
  Complex front() const { return values_.front(); }
  Complex back() const { return values_.back(); }

  /// Restriction to nodes [first, last] (inclusive).
  GridFunction slice(std::size_t first, std::size_t last) const;

 private:
  IntervalDomain domain_;
  std::vector<Complex> values_;
};

/// Element of C(X) for a finite discrete X = {0, ..., n-1}.
class FiniteSpaceFunction {
 public:
  explicit FiniteSpaceFunction(std::vector<Complex> values);

  std::span<const Complex> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  Complex operator[](std::size_t k) const { return values_[k]; }

 private:
  std::vector<Complex> values_;
};

/// Interior node of an edge identified with a vertex (a crossing that has not
/// yet been turned into an edge endpoint).
struct Junction {
  std::size_t node;
  std::size_t vertex;
  friend bool operator==(const Junction&, const Junction&) = default;
};

struct GraphEdge {
  std::string id;
  std::size_t u;  // vertex at node 0
  std::size_t v;  // vertex at node n-1
  IntervalDomain grid;
  std::vector<Junction> junctions;
};

/// Location of a vertex on an edge grid.
struct VertexIncidence {
  std::size_t edge;
  std::size_t node;
};

class GraphDomain {
 public:
  GraphDomain(std::vector<std::string> vertices, std::vector<GraphEdge> edges);

  const std::vector<std::string>& vertices() const noexcept { return vertices_; }
  const std::vector<GraphEdge>& edges() const noexcept { return edges_; }

  /// Every place the vertex occurs: edge endpoints and junctions.
  std::vector<VertexIncidence> incidences(std::size_t vertex) const;

  /// True when no edge carries interior junctions, i.e. edges meet only at
  /// their endpoints.
  bool is_partitioned() const noexcept;

 private:
  std::vector<std::string> vertices_;
  std::vector<GraphEdge> edges_;
};

inline constexpr double kVertexTolerance = 1e-9;

class GraphFunction {
 public:
  /// Throws VertexInconsistency when values at a shared vertex disagree by
  /// more than kVertexTolerance * (1 + |value|).
  GraphFunction(GraphDomain domain, std::vector<GridFunction> edge_values);

  const GraphDomain& domain() const noexcept { return domain_; }
  const std::vector<GridFunction>& edges() const noexcept { return edge_values_; }
  const GridFunction& edge(std::size_t k) const { return edge_values_[k]; }

  /// Value at the first incidence of the vertex.
  Complex vertex_value(std::size_t vertex) const;

  /// Largest disagreement between incidences of any single vertex.
  double vertex_disagreement() const;

 private:
  GraphDomain domain_;
  std::vector<GridFunction> edge_values_;
};

enum class ModulusSum { Linear, Squared };

double sup_norm(const GridFunction& f);
double sup_norm(const FiniteSpaceFunction& f);
double sup_norm(const GraphFunction& f);
double sup_norm(std::span<const Complex> values);

GridFunction pointwise_product(const GridFunction& f, const GridFunction& g);
FiniteSpaceFunction pointwise_product(const FiniteSpaceFunction& f, const FiniteSpaceFunction& g);
GraphFunction pointwise_product(const GraphFunction& f, const GraphFunction& g);

/// min over nodes of |f| + |g| (Linear) or |f|^2 + |g|^2 (Squared).
double min_modulus_sum(const GridFunction& f, const GridFunction& g,
                       ModulusSum variant = ModulusSum::Linear);
double min_modulus_sum(const FiniteSpaceFunction& f, const FiniteSpaceFunction& g,
                       ModulusSum variant = ModulusSum::Linear);

GridFunction operator+(const GridFunction& f, const GridFunction& g);
GridFunction operator-(const GridFunction& f, const GridFunction& g);
GridFunction operator*(Complex c, const GridFunction& f);
FiniteSpaceFunction operator+(const FiniteSpaceFunction& f, const FiniteSpaceFunction& g);
FiniteSpaceFunction operator-(const FiniteSpaceFunction& f, const FiniteSpaceFunction& g);
FiniteSpaceFunction operator*(Complex c, const FiniteSpaceFunction& f);

GridFunction conj(const GridFunction& f);
FiniteSpaceFunction conj(const FiniteSpaceFunction& f);

/// Real-valued |f|^2 + |g|^2 per node.
std::vector<double> squared_modulus_sum(const GridFunction& f, const GridFunction& g);

/// (n-1)*factor + 1 nodes; old nodes keep their values bit-exactly, new nodes
/// interpolate linearly.
GridFunction refine(const GridFunction& f, std::size_t factor);

/// Piecewise-linear resampling onto an n-node grid over the same interval.
GridFunction resample(const GridFunction& f, std::size_t n);

void require_same_domain(const GridFunction& f, const GridFunction& g);

}  // namespace openmult
