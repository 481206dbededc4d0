#include <gtest/gtest.h>

#include <numbers>

#include "families.hpp"
#include "openmult/error.hpp"
#include "openmult/pointwise_factorizer.hpp"

namespace openmult {
namespace {

using testing::Rng;

TEST(ScalarFactor, DivisionBranchDividesByTheLargerFactor) {
  const auto [x, y] = scalar_factor(2.0, 3.0, 0.1, 1.0);
  EXPECT_EQ(y, 3.0);
  EXPECT_NEAR(std::abs(x - (2.0 + 0.1 / 3.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(x * y - 6.1), 0.0, 1e-14);
  const auto [u, v] = scalar_factor(3.0, 2.0, 0.1, 1.0);
  EXPECT_EQ(u, 3.0);
  EXPECT_NEAR(std::abs(v - (2.0 + 0.1 / 3.0)), 0.0, 1e-15);
}

TEST(ScalarFactor, BalancedBranch) {
  const auto [x, y] = scalar_factor(0.0, 0.0, 0.25, 1.0);
  EXPECT_EQ(x, 0.5);
  EXPECT_EQ(y, 0.5);
}

TEST(ScalarFactor, RejectsLargePerturbation) {
  try {
    scalar_factor(1.0, 1.0, 0.3, 1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::PerturbationTooLarge);
  }
}

TEST(ScalarFactor, NeverLeavesTheBall) {
  Rng rng(51);
  for (int trial = 0; trial < 50000; ++trial) {
    const double eps = testing::uniform(rng, 0.01, 1.0);
    const Complex x = std::polar(testing::uniform(rng, 0, 1) * testing::uniform(rng, 0, 2), testing::uniform(rng, -4, 4));
    const Complex y = std::polar(testing::uniform(rng, 0, 1) * testing::uniform(rng, 0, 2), testing::uniform(rng, -4, 4));
    const Complex w = std::polar(eps * eps / 4 * testing::uniform(rng), testing::uniform(rng, -4, 4));
    const auto [a, b] = scalar_factor(x, y, w, eps);
    EXPECT_LE(std::max(std::abs(a - x), std::abs(b - y)) / eps, 1.0);
    EXPECT_LE(std::abs(a * b - (x * y + w)), 1e-12 * (1 + std::abs(x * y + w)));
  }
}

TEST(OpenMultFinite, ZeroAndReductionAndRandom) {
  Rng rng(52);
  FiniteSpaceFunction a({1.0, Complex(0, 2)});
  FiniteSpaceFunction b({0.5, 0.0});
  const auto [x, y] = open_mult_finite(a, b, FiniteSpaceFunction({0.0, 0.0}), 0.5);
  EXPECT_EQ(x[0], a[0]);
  EXPECT_EQ(y[1], b[1]);

  const auto [s, t] = scalar_factor(0.3, -0.2, Complex(0.01, 0.02), 0.4);
  const auto [u, v] = open_mult_finite(FiniteSpaceFunction({0.3}), FiniteSpaceFunction({-0.2}),
                                       FiniteSpaceFunction({Complex(0.01, 0.02)}), 0.4);
  EXPECT_EQ(u[0], s);
  EXPECT_EQ(v[0], t);

  for (int trial = 0; trial < 200; ++trial) {
    const double eps = testing::uniform(rng, 0.05, 1.0);
    std::vector<Complex> av(16);
    std::vector<Complex> bv(16);
    std::vector<Complex> dv(16);
    for (int k = 0; k < 16; ++k) {
      av[k] = testing::normal_complex(rng, 0.3);
      bv[k] = testing::normal_complex(rng, 0.3);
      dv[k] = std::polar(eps * eps / 4 * testing::uniform(rng), testing::uniform(rng, -4, 4));
    }
    const FiniteSpaceFunction fa(av), fb(bv), fd(dv);
    const auto [p, q] = open_mult_finite(fa, fb, fd, eps);
    EXPECT_LE(sup_norm(p - fa), eps);
    EXPECT_LE(sup_norm(q - fb), eps);
    for (int k = 0; k < 16; ++k) EXPECT_LE(std::abs(p[k] * q[k] - (av[k] * bv[k] + dv[k])), 1e-12);
  }
}

TEST(NondegApprox, Examples) {
  FiniteSpaceFunction f({1.0, 2.0});
  FiniteSpaceFunction g({Complex(0, 1), 0.0});
  const auto [a, b] = nondeg_approx(f, g, 0.6);
  EXPECT_EQ(a[0], f[0]);
  EXPECT_EQ(b[1], g[1]);

  const auto [x, y] = nondeg_approx(FiniteSpaceFunction({1.0, 0.0}), FiniteSpaceFunction({0.0, 0.0}), 0.6);
  EXPECT_EQ(x[0], 1.0);
  EXPECT_EQ(x[1], 0.3);
  EXPECT_EQ(y[0], 0.0);
  EXPECT_EQ(y[1], 0.0);
  EXPECT_NEAR(min_modulus_sum(x, y, ModulusSum::Squared), 0.09, 1e-15);

  const auto [u, v] = nondeg_approx(FiniteSpaceFunction({0.0, 0.0, 0.0}),
                                    FiniteSpaceFunction({0.0, 0.0, 0.0}), 1.0);
  for (std::size_t k = 0; k < 3; ++k) {
    EXPECT_EQ(u[k], 0.5);
    EXPECT_EQ(v[k], 0.0);
  }
}

TEST(NondegApprox, ProductBitExact) {
  Rng rng(53);
  for (int trial = 0; trial < 2000; ++trial) {
    const double eps = std::pow(10.0, testing::uniform(rng, -3, 0));
    std::vector<Complex> fv(12);
    std::vector<Complex> gv(12);
    for (int k = 0; k < 12; ++k) {
      fv[k] = testing::normal_complex(rng, eps * testing::uniform(rng, 0, 0.6));
      gv[k] = testing::normal_complex(rng, eps * testing::uniform(rng, 0, 0.6));
    }
    const FiniteSpaceFunction f(fv), g(gv);
    const auto [a, b] = nondeg_approx(f, g, eps);
    for (int k = 0; k < 12; ++k) EXPECT_EQ(a[k] * b[k], fv[k] * gv[k]);
    EXPECT_LE(sup_norm(a - f), eps);
    EXPECT_LE(sup_norm(b - g), eps);
    EXPECT_GT(min_modulus_sum(a, b, ModulusSum::Squared), 0.0);
  }
}

TEST(DiagonalModel, DifferentialInequalityWithDOne) {
  Rng rng(54);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t m = 1 + static_cast<std::size_t>(testing::uniform(rng) * 6);
    std::vector<double> w(m);
    for (auto& x : w) x = testing::uniform(rng, 0.1, 3.0);
    DiagonalModel model(w);
    AlgebraElement a{std::vector<Complex>(m + 1)};
    AlgebraElement b{std::vector<Complex>(m + 1)};
    for (auto& x : a.coords) x = testing::normal_complex(rng);
    for (auto& x : b.coords) x = testing::normal_complex(rng);
    const double ab = model.norm(model.product(a, b));
    EXPECT_LE(ab, (model.norm(a) * model.sup_norm(b) + model.sup_norm(a) * model.norm(b)) * (1 + 1e-12));
    // Ideal part: for a without unit, ||ab|| <= ||a|| ||b||_inf.
    a.coords[0] = 0.0;
    EXPECT_LE(model.norm(model.product(a, b)), model.norm(a) * model.sup_norm(b) * (1 + 1e-12));
  }
}

TEST(DiagonalOpenMult, ZeroPerturbationLeavesFactors) {
  DiagonalModel model({1.0, 1.0});
  DiagonalAlgebraElement a{1.0, {0.2, -0.1}};
  DiagonalAlgebraElement b{Complex(0, 1), {0.3, 0.0}};
  DiagonalAlgebraElement d{0.0, {0.0, 0.0}};
  const auto r = diagonal_open_mult(a, b, d, 0.5, model);
  EXPECT_EQ(r.trace.steps.size(), 1u);
  EXPECT_EQ(r.a.scalar, a.scalar);
  EXPECT_EQ(r.b.coords, b.coords);
}

TEST(DiagonalOpenMult, PureScalarsReduceToSinglePoint) {
  DiagonalModel model({});
  const AlgebraElement one{{1.0}};
  const double h0 = 0.5 * scheme_params(one, one, 0.9, model).delta;
  const auto r = diagonal_open_mult({1.0, {}}, {1.0, {}}, {h0, {}}, 0.9, model);
  EXPECT_NEAR(std::abs(r.a.scalar * r.b.scalar - (1.0 + h0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(r.a.scalar - r.b.scalar), 0.0, 1e-15);
}

TEST(DiagonalOpenMult, RandomInstancesConverge) {
  Rng rng(55);
  DiagonalModel model({1.0, 1.0});
  for (int trial = 0; trial < 200; ++trial) {
    DiagonalAlgebraElement a{testing::normal_complex(rng), {testing::normal_complex(rng, 0.3), testing::normal_complex(rng, 0.3)}};
    DiagonalAlgebraElement b{testing::normal_complex(rng), {testing::normal_complex(rng, 0.3), testing::normal_complex(rng, 0.3)}};
    const double eps = 0.5;
    const auto F = to_algebra_element(a);
    const auto G = to_algebra_element(b);
    SchemeParams p;
    try {
      p = scheme_params(F, G, eps, model);
    } catch (const Error&) {
      continue;
    }
    AlgebraElement H{{testing::normal_complex(rng), testing::normal_complex(rng), testing::normal_complex(rng)}};
    H = model.scale(0.9 * p.delta / model.norm(H), H);
    const auto r = diagonal_open_mult(a, b, to_diagonal_element(H), eps, model);
    const auto target = model.sum(model.product(F, G), H);
    const auto got = model.product(to_algebra_element(r.a), to_algebra_element(r.b));
    EXPECT_LE(model.norm(model.difference(got, target)), 1e-9);
    EXPECT_LT(model.norm(model.difference(to_algebra_element(r.a), F)), eps);
    EXPECT_LT(model.norm(model.difference(to_algebra_element(r.b), G)), eps);
  }
}


TEST(ScalarFactor, BranchBoundaryStaysInsideBall) {
  const Complex x = std::polar(0.05, 0.4 + 2.0 * std::numbers::pi / 3);
  const Complex y = std::polar(0.05, 0.4 + 4.0 * std::numbers::pi / 3);
  for (int k = 0; k < 8; ++k) {
    const Complex w = std::polar(0.01, 2.0 * std::numbers::pi * k / 8 + 0.1);
    const auto [a, b] = scalar_factor(x, y, w, 0.2);
    EXPECT_LE(std::abs(a - x), 0.2);
    EXPECT_LE(std::abs(b - y), 0.2);
    EXPECT_NEAR(std::abs(a * b - (x * y + w)), 0.0, 1e-15);
  }
}

}  // namespace
}  // namespace openmult
