#include <gtest/gtest.h>

#include <cmath>

#include "ciprng/error.hpp"
#include "ciprng/special.hpp"
#include "ciprng/stats.hpp"

namespace ciprng {
namespace {

#include "../oracles/special_oracle.inc"

double rel_err(double got, double want) { return want == 0.0 ? std::fabs(got) : std::fabs(got - want) / std::fabs(want); }

TEST(Erfc, KnownValues) {
  EXPECT_EQ(erfc(0.0), 1.0);
  EXPECT_LT(rel_err(erfc(1.0), 0.157299207050285130658779364917), 1e-14);
  for (double x : {0.1, 0.5, 1.3, 2.7, 4.0}) EXPECT_NEAR(erfc(-x), 2.0 - erfc(x), 1e-15);
}

TEST(Erfc, OracleGrid) {
  ASSERT_EQ(std::size(kErfcOracle), 100u);
  for (const auto& p : kErfcOracle) EXPECT_LT(rel_err(erfc(p.x), p.value), 1e-10) << "x=" << p.x;
}

TEST(Igamc, Identities) {
  for (double a : {0.5, 1.0, 4.5, 100.0}) EXPECT_EQ(igamc(a, 0.0), 1.0);
  for (double x : {0.01, 0.5, 1.0, 3.0, 10.0, 50.0}) EXPECT_LT(rel_err(igamc(1.0, x), std::exp(-x)), 1e-13) << x;
  EXPECT_LT(rel_err(igamc(1.5, 2.0), 0.261464129949110622202822075976), 1e-12);
  // Q(1/2, x) = erfc(sqrt x)
  for (double x : {0.2, 1.0, 7.5}) EXPECT_LT(rel_err(igamc(0.5, x), std::erfc(std::sqrt(x))), 1e-12);
}

TEST(Igamc, OracleGrid) {
  ASSERT_EQ(std::size(kIgamcOracle), 100u);
  for (const auto& p : kIgamcOracle) {
    EXPECT_LT(rel_err(igamc(p.a, p.x), p.value), 1e-10) << "a=" << p.a << " x=" << p.x;
  }
}

TEST(Igamc, ComplementsIgam) {
  for (const auto& p : kIgamcOracle) EXPECT_NEAR(igam(p.a, p.x) + igamc(p.a, p.x), 1.0, 1e-14);
}

TEST(Igamc, NonIncreasingInX) {
  for (double a : {0.5, 1.5, 4.5, 12.0, 99.5, 640.0}) {
    double prev = 1.0;
    for (int i = 0; i <= 400; ++i) {
      const double x = a * 3.0 * i / 400.0;
      const double q = igamc(a, x);
      ASSERT_LE(q, prev) << "a=" << a << " x=" << x;
      ASSERT_GE(q, 0.0);
      prev = q;
    }
  }
}

TEST(Igamc, DomainErrors) {
  EXPECT_THROW(igamc(0.0, 1.0), Error);
  EXPECT_THROW(igamc(-1.0, 1.0), Error);
  EXPECT_THROW(igamc(1.0, -0.5), Error);
  EXPECT_THROW(igamc(std::nan(""), 1.0), Error);
}

TEST(NormalCdf, Symmetry) {
  EXPECT_DOUBLE_EQ(normal_cdf(0.0), 0.5);
  for (double z : {0.3, 1.0, 2.5, 5.0}) EXPECT_NEAR(normal_cdf(z) + normal_cdf(-z), 1.0, 1e-15);
  EXPECT_NEAR(normal_cdf(1.959963984540054), 0.975, 1e-12);
}

TEST(RankProbability, MatchesCountingOracle) {
  for (unsigned r = 0; r <= 32; ++r) {
    const double want = kRankOracle[r];
    const double got = rank_probability(32, r);
    if (want > 1e-300) {
      EXPECT_LT(rel_err(got, want), 1e-12) << "r=" << r;
    } else {
      EXPECT_NEAR(got, want, 1e-300) << "r=" << r;
    }
  }
}

TEST(RankProbability, CategoriesSumToOne) {
  const auto p = rank_probabilities();
  EXPECT_NEAR(p[0] + p[1] + p[2] + p[3], 1.0, 1e-12);
  double low = 0.0;
  for (unsigned r = 0; r <= 29; ++r) low += kRankOracle[r];
  EXPECT_LT(rel_err(p[0], kRankOracle[32]), 1e-12);
  EXPECT_LT(rel_err(p[1], kRankOracle[31]), 1e-12);
  EXPECT_LT(rel_err(p[2], kRankOracle[30]), 1e-12);
  EXPECT_LT(rel_err(p[3], low), 1e-12);
  EXPECT_NEAR(p[0], 0.2888, 1e-4);
  EXPECT_NEAR(p[1], 0.5776, 1e-4);
  EXPECT_NEAR(p[2], 0.1284, 1e-4);
  EXPECT_NEAR(p[3], 0.0052, 1e-4);
}

TEST(RankProbability, SmallMatricesSumToOne) {
  for (unsigned n = 1; n <= 8; ++n) {
    double total = 0.0;
    for (unsigned r = 0; r <= n; ++r) total += rank_probability(n, r);
    EXPECT_NEAR(total, 1.0, 1e-14) << n;
  }
}

}  // namespace
}  // namespace ciprng
