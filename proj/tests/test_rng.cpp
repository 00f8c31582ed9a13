#include "lef/rng.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"

using namespace lef;

TEST(RngStream, SamePathSameSequence) {
  RngStream a = RngStream(42).derive(3).derive("img_007").derive(11);
  RngStream b = RngStream(42).derive(3).derive("img_007").derive(11);
  for (int i = 0; i < 100; ++i) ASSERT_EQ(a.next(), b.next());
}

TEST(RngStream, DeriveDoesNotConsumeParentDraws) {
  RngStream a(7);
  RngStream b(7);
  (void)a.derive(1);
  (void)a.derive("label");
  for (int i = 0; i < 16; ++i) ASSERT_EQ(a.next(), b.next());
}

TEST(RngStream, DifferentPathsDiffer) {
  RngStream root(42);
  EXPECT_NE(root.derive(0).next(), root.derive(1).next());
  EXPECT_NE(root.derive("a").next(), root.derive("b").next());
  EXPECT_NE(RngStream(1).next(), RngStream(2).next());
}

TEST(RngStream, UniformUnitRange) {
  RngStream rng(5);
  for (int i = 0; i < 10000; ++i) {
    const double u = rng.uniform_unit();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
  for (int i = 0; i < 10000; ++i) {
    const double u = rng.uniform_unit_open0();
    ASSERT_GT(u, 0.0);
    ASSERT_LE(u, 1.0);
  }
}

TEST(RngStream, UniformIntInclusiveAndUnbiased) {
  RngStream rng(17);
  std::vector<std::int64_t> counts(7, 0);
  const int draws = 70000;
  for (int i = 0; i < draws; ++i) {
    const std::int64_t v = rng.uniform_int(3, 9);
    ASSERT_GE(v, 3);
    ASSERT_LE(v, 9);
    ++counts[static_cast<std::size_t>(v - 3)];
  }
  const std::vector<double> expected(7, draws / 7.0);
  // dof 6; reuse the dof-2 critical value is wrong, so compare loosely:
  // chi2_inv(0.9999, 6) = 27.856
  EXPECT_LT(oracle::chi_square_statistic(counts, expected), 27.856);
}

TEST(RngStream, BernoulliEdgeCases) {
  RngStream rng(3);
  for (int i = 0; i < 1000; ++i) ASSERT_FALSE(rng.bernoulli(0.0));
  for (int i = 0; i < 1000; ++i) ASSERT_TRUE(rng.bernoulli(1.0));
}

TEST(RngStream, NormalMomentsAndZeroSigma) {
  RngStream rng(23);
  const int n = 200000;
  double sum = 0.0, sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = rng.normal(10.0, 2.0);
    sum += x;
    sq += x * x;
  }
  const double mean = sum / n;
  const double var = sq / n - mean * mean;
  EXPECT_NEAR(mean, 10.0, 0.05);
  EXPECT_NEAR(var, 4.0, 0.1);
  for (int i = 0; i < 100; ++i) ASSERT_DOUBLE_EQ(rng.normal(5.0, 0.0), 5.0);
}
