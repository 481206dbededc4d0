#include <gtest/gtest.h>

#include <numbers>

#include "families.hpp"
#include "openmult/error.hpp"
#include "openmult/function.hpp"
#include "oracles.hpp"

namespace openmult {
namespace {

using testing::Rng;

TEST(IntervalDomain, RejectsBadGrids) {
  EXPECT_THROW(IntervalDomain(1.0, 0.0, 10), Error);
  EXPECT_THROW(IntervalDomain(0.0, 1.0, 1), Error);
  EXPECT_NO_THROW(IntervalDomain(0.0, 1.0, 2));
}

TEST(IntervalDomain, LastNodeIsExactlyB) {
  IntervalDomain d(0.1, 0.7, 1025);
  EXPECT_EQ(d.node(0), 0.1);
  EXPECT_EQ(d.node(1024), 0.7);
}

TEST(GridFunction, RejectsNonFiniteAndWrongSize) {
  IntervalDomain d(0, 1, 3);
  EXPECT_THROW(GridFunction(d, {1.0, 2.0}), Error);
  EXPECT_THROW(GridFunction(d, {1.0, std::nan(""), 2.0}), Error);
}

TEST(SupNorm, Examples) {
  IntervalDomain d(0, 1, 101);
  EXPECT_EQ(sup_norm(GridFunction::constant(d, 0.0)), 0.0);
  EXPECT_EQ(sup_norm(GridFunction::sample(d, [](double t) { return t; })), 1.0);
  const auto e = GridFunction::sample(
      d, [](double t) { return std::exp(Complex(0, 2 * std::numbers::pi * t)); });
  EXPECT_NEAR(sup_norm(e), 1.0, 1e-15);
}

TEST(SupNorm, GraphAndFinite) {
  FiniteSpaceFunction f({1.0, Complex(0, -3), 2.0});
  EXPECT_EQ(sup_norm(f), 3.0);
  EXPECT_THROW(FiniteSpaceFunction({}), Error);
}

TEST(PointwiseProduct, Examples) {
  IntervalDomain d(0, 1, 3);
  const auto t = GridFunction::sample(d, [](double s) { return s; });
  const auto p = pointwise_product(t, t);
  EXPECT_EQ(p[0], 0.0);
  EXPECT_EQ(p[1], 0.25);
  EXPECT_EQ(p[2], 1.0);
  const auto one = GridFunction::constant(d, 1.0);
  Rng rng(3);
  const auto g = testing::random_trig(d, rng);
  const auto q = pointwise_product(one, g);
  for (std::size_t k = 0; k < 3; ++k) EXPECT_EQ(q[k], g[k]);
}

TEST(PointwiseProduct, MatchesNodeOracleAndRejectsMismatch) {
  Rng rng(4);
  IntervalDomain d(0, 1, 257);
  const auto f = testing::random_trig(d, rng);
  const auto g = testing::random_poly(d, rng);
  const auto p = pointwise_product(f, g);
  for (std::size_t k = 0; k < d.n(); ++k) EXPECT_EQ(p[k], f[k] * g[k]);
  EXPECT_THROW(pointwise_product(f, testing::random_trig(IntervalDomain(0, 1, 256), rng)), Error);
}

TEST(MinModulusSum, Examples) {
  IntervalDomain d(0, 1, 101);
  EXPECT_EQ(min_modulus_sum(GridFunction::constant(d, 1.0), GridFunction::constant(d, 0.0)), 1.0);
  const auto h = GridFunction::sample(d, [](double t) { return t - 0.5; });
  EXPECT_EQ(min_modulus_sum(h, h), 0.0);
}

TEST(MinModulusSum, MatchesScan) {
  Rng rng(5);
  IntervalDomain d(0, 1, 513);
  const auto f = testing::random_trig(d, rng);
  const auto g = testing::random_trig(d, rng);
  double lin = 1e300;
  double sq = 1e300;
  for (std::size_t k = 0; k < d.n(); ++k) {
    lin = std::min(lin, std::abs(f[k]) + std::abs(g[k]));
    sq = std::min(sq, std::norm(f[k]) + std::norm(g[k]));
  }
  EXPECT_EQ(min_modulus_sum(f, g), lin);
  EXPECT_NEAR(min_modulus_sum(f, g, ModulusSum::Squared), sq, 1e-15 * (1 + sq));
}

TEST(Refine, Examples) {
  IntervalDomain d(0, 1, 2);
  const auto c = refine(GridFunction::constant(d, Complex(2, 1)), 2);
  for (Complex z : c.values()) EXPECT_EQ(z, Complex(2, 1));
  const auto t = refine(GridFunction::sample(d, [](double s) { return s; }), 2);
  ASSERT_EQ(t.size(), 3u);
  EXPECT_EQ(t[1], 0.5);
  EXPECT_THROW(refine(t, 1), Error);
}

TEST(Refine, KeepsOldNodesBitExact) {
  Rng rng(6);
  IntervalDomain d(-1, 2, 65);
  const auto f = testing::random_trig(d, rng);
  const auto r = refine(f, 4);
  ASSERT_EQ(r.size(), 257u);
  for (std::size_t k = 0; k < f.size(); ++k) EXPECT_EQ(r[4 * k], f[k]);
}

TEST(NormProperties, HomogeneityTriangleSubmultiplicativity) {
  Rng rng(7);
  IntervalDomain d(0, 1, 129);
  for (int trial = 0; trial < 200; ++trial) {
    const auto f = testing::random_trig(d, rng);
    const auto g = testing::random_poly(d, rng);
    const Complex c = testing::normal_complex(rng);
    const double nf = sup_norm(f);
    const double ng = sup_norm(g);
    EXPECT_NEAR(sup_norm(c * f), std::abs(c) * nf, 1e-12 * std::abs(c) * nf);
    EXPECT_LE(sup_norm(f + g), (nf + ng) * (1 + 1e-12));
    EXPECT_LE(sup_norm(pointwise_product(f, g)), nf * ng * (1 + 1e-12));
    EXPECT_EQ(sup_norm(conj(f)), nf);
    const auto lhs = conj(pointwise_product(f, g));
    const auto rhs = pointwise_product(conj(f), conj(g));
    for (std::size_t k = 0; k < d.n(); ++k) EXPECT_EQ(lhs[k], rhs[k]);
  }
}

TEST(GraphFunction, DetectsVertexDisagreement) {
  auto g = testing::make_graph(testing::star3(), 9);
  std::vector<GridFunction> v;
  for (const auto& e : g.edges()) v.push_back(GridFunction::constant(e.grid, 1.0));
  EXPECT_NO_THROW(GraphFunction(g, v));
  std::vector<Complex> bad(9, 1.0);
  bad.front() = 1.5;
  v[1] = GridFunction(g.edges()[1].grid, bad);
  try {
    GraphFunction broken(g, v);
    FAIL() << "expected VertexInconsistency";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::VertexInconsistency);
  }
}

TEST(GraphDomain, IncidencesAndJunctions) {
  auto g = testing::make_graph(testing::theta(), 5);
  EXPECT_EQ(g.incidences(0).size(), 3u);
  EXPECT_TRUE(g.is_partitioned());
  std::vector<GraphEdge> edges = g.edges();
  edges[0].junctions.push_back({0, 1});  // endpoint, not interior
  EXPECT_THROW(GraphDomain(g.vertices(), edges), Error);
}

}  // namespace
}  // namespace openmult
