#include <gtest/gtest.h>

#include "families.hpp"
#include "openmult/error.hpp"
#include "openmult/quadratic_root.hpp"
#include "oracles.hpp"

namespace openmult {
namespace {

using testing::Rng;

TEST(Roots, FactoredPolynomial) {
  const auto [big, small] = roots({2.0, -3.0, 1.0});
  EXPECT_NEAR(std::abs(big - 2.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(small - 1.0), 0.0, 1e-15);
}

TEST(Roots, ZeroRootAndDegenerate) {
  const Complex b(0.3, -1.2);
  const auto [big, small] = roots({0.0, b, 1.0});
  EXPECT_EQ(small, 0.0);
  EXPECT_NEAR(std::abs(big + b), 0.0, 1e-15);
  const auto [z1, z2] = roots({0.0, 0.0, Complex(0, 1)});
  EXPECT_EQ(z1, 0.0);
  EXPECT_EQ(z2, 0.0);
}

TEST(Roots, RejectsNonUnimodularLeadingCoefficient) {
  EXPECT_THROW(roots({1.0, 1.0, 1.1}), Error);
}

TEST(Roots, VietaResidualsOnRandomTriples) {
  Rng rng(11);
  for (int trial = 0; trial < 20000; ++trial) {
    const Complex a = testing::normal_complex(rng, std::pow(10.0, testing::uniform(rng, -8, 1)));
    const Complex b = testing::normal_complex(rng);
    const Complex g = std::polar(1.0, testing::uniform(rng, -3.2, 3.2));
    const auto [z1, z2] = roots({a, b, g});
    const double scale = 1.0 + std::abs(a) + std::abs(b);
    EXPECT_LE(std::abs(g * (z1 + z2) + b), 1e-10 * scale);
    EXPECT_LE(std::abs(g * z1 * z2 - a), 1e-10 * scale);
    EXPECT_GE(std::abs(z1), std::abs(z2));
  }
}

TEST(InDelta, Examples) {
  EXPECT_TRUE(in_delta({2.0, -3.0, 1.0}));
  EXPECT_FALSE(in_delta({1.0, 0.0, 1.0}));
  EXPECT_TRUE(in_delta({0.01, 1.0, 1.0}));
}

TEST(SmallerRoot, Examples) {
  EXPECT_NEAR(std::abs(smaller_root({2.0, -3.0, 1.0}) - 1.0), 0.0, 1e-15);
  EXPECT_EQ(smaller_root({0.0, 1.0, 1.0}), 0.0);
  // z^2 + z + 0.01: (-1 + sqrt(0.96)) / 2.
  const Complex z = smaller_root({0.01, 1.0, 1.0});
  EXPECT_NEAR(z.real(), -0.010102051443364381, 1e-16);
  EXPECT_EQ(z.imag(), 0.0);
}

TEST(SmallerRoot, ThrowsOnTie) {
  try {
    smaller_root({1.0, 0.0, 1.0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotInDelta);
  }
}

TEST(SmallerRoot, MatchesTextbookOracle) {
  Rng rng(12);
  for (int trial = 0; trial < 20000; ++trial) {
    const Complex a = testing::normal_complex(rng);
    const Complex b = testing::normal_complex(rng);
    const Complex g = std::polar(1.0, testing::uniform(rng, -3.2, 3.2));
    if (!in_delta({a, b, g})) continue;
    const auto [small, big] = testing::textbook_roots(a, b, g);
    if (std::abs(big) - std::abs(small) < 1e-6 * std::abs(big)) continue;
    const Complex z = smaller_root({a, b, g});
    EXPECT_LE(std::abs(testing::widen(z) - small), 1e-9 * (1.0 + std::abs(small)));
  }
}

TEST(SmallerRoot, BoundChainFromSmallAlpha) {
  // |beta| >= eta and |alpha| <= delta with 2 delta / eta <= eps, < eta / 2
  // imply a strict modulus gap and |Z| <= eps.
  Rng rng(13);
  for (int trial = 0; trial < 20000; ++trial) {
    const double eta = testing::uniform(rng, 1e-3, 2.0);
    const double eps = testing::uniform(rng, 1e-3, 1.0);
    const double delta = std::min(eps * eta / 2.0, eta * eta / 5.0);
    const Complex b = std::polar(eta * testing::uniform(rng, 1.0, 3.0), testing::uniform(rng, -3.2, 3.2));
    const Complex a = std::polar(delta * testing::uniform(rng), testing::uniform(rng, -3.2, 3.2));
    const Complex g = std::polar(1.0, testing::uniform(rng, -3.2, 3.2));
    ASSERT_TRUE(in_delta({a, b, g}));
    const Complex z = smaller_root({a, b, g});
    EXPECT_LE(std::abs(z), eps * (1 + 1e-12));
    EXPECT_LE(std::abs(z), 2.0 * std::abs(a) / std::abs(b) * (1 + 1e-12));
  }
}

TEST(SmallerRoot, LipschitzUnderHalvingPerturbations) {
  Rng rng(14);
  for (int trial = 0; trial < 500; ++trial) {
    const double eta = testing::uniform(rng, 0.1, 1.0);
    const Complex b = std::polar(eta * testing::uniform(rng, 1.0, 2.0), testing::uniform(rng, -3.2, 3.2));
    const Complex a = std::polar(eta * eta / 5.0 * testing::uniform(rng), testing::uniform(rng, -3.2, 3.2));
    const Complex g = std::polar(1.0, testing::uniform(rng, -3.2, 3.2));
    const Complex dir_a = testing::normal_complex(rng);
    const Complex dir_b = testing::normal_complex(rng);
    const double dir_g = testing::uniform(rng, -1, 1);
    const Complex z0 = smaller_root({a, b, g});
    double prev = 0.0;
    for (double h = 1e-3; h > 1e-7; h /= 2.0) {
      const Complex z = smaller_root({a + h * dir_a, b + h * dir_b, g * std::polar(1.0, h * dir_g)});
      const double ratio = std::abs(z - z0) / h;
      if (prev > 0.0) EXPECT_LE(ratio, 2.0 * prev + 1e-6);
      prev = ratio;
    }
  }
}

}  // namespace
}  // namespace openmult
