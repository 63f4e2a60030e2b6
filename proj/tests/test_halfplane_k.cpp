#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "dhm/halfplane_k.hpp"
#include "oracles.hpp"

using namespace dhm;

namespace {

const oracle::HalfPlaneNystrom& nystrom() {
  static const oracle::HalfPlaneNystrom n;
  return n;
}

WalkConfig config(double h, std::uint64_t samples, std::uint64_t seed = 3) {
  WalkConfig c;
  c.h = h;
  c.samples = samples;
  c.seed = seed;
  return c;
}

// Discretisation error of the Nystrom oracle away from y = 0.
constexpr double kOracleTol = 1e-4;

}  // namespace

TEST(KOracle, NystromQuadratureReproducesSpitzerLimit) {
  EXPECT_NEAR(nystrom().k_quadrature(64), oracle::spitzer_k(), 5e-6);
  EXPECT_NEAR(oracle::spitzer_k(), kReferenceK, 1e-6);
  EXPECT_NEAR(nystrom()(10.0), oracle::spitzer_k(), 1e-6);
}

TEST(KConstants, ConstantTermAndWeight) {
  EXPECT_DOUBLE_EQ(k_constant_term(), 16.0 / (45.0 * std::numbers::pi));
  EXPECT_EQ(k_integrand_weight(0.0), 0.0);
  EXPECT_NEAR(k_integrand_weight(std::numbers::pi / 2.0), 2.0 / 3.0, 1e-15);
  const double th = 0.7, s = std::sin(th), c = std::cos(th);
  EXPECT_NEAR(k_integrand_weight(th), s * s - std::pow(s, 4) / 3.0 - th * c * s, 1e-16);
  EXPECT_GT(k_integrand_weight(0.3), 0.0);
}

TEST(KConstants, CombineAddsConstantAndPropagatesError) {
  const std::vector<double> w = {0.5, 0.25};
  const std::vector<double> wt = {1.0, 2.0};
  const std::vector<MCEstimate> e = {{0.2, 0.01, 10, 0}, {0.4, 0.02, 20, 1}};
  const MCEstimate k = combine_k(w, wt, e);
  const double s = 8.0 / std::numbers::pi;
  EXPECT_NEAR(k.mean, k_constant_term() + s * (0.5 * 0.2 + 0.5 * 0.4), 1e-15);
  EXPECT_NEAR(k.std_error, s * std::hypot(0.5 * 0.01, 0.5 * 0.02), 1e-15);
  EXPECT_EQ(k.n, 30u);
  EXPECT_EQ(k.censored, 1u);
}

TEST(ExitFunctional, MatchesNystromOracle) {
  for (double y : {0.005, 0.5, 1.0, 2.5}) {
    const MCEstimate e = exit_functional(y, config(1.0, 1'000'000));
    EXPECT_NEAR(e.mean, nystrom()(y), 4.0 * e.std_error + kOracleTol) << "y = " << y;
  }
}

TEST(ExitFunctional, ScalesWithStepRadius) {
  const MCEstimate a = exit_functional(0.25, config(0.5, 50000));
  const MCEstimate b = exit_functional(0.5, config(1.0, 50000));
  EXPECT_NEAR(a.mean, 0.5 * b.mean, 1e-14);
  EXPECT_NEAR(a.std_error, 0.5 * b.std_error, 1e-14);
}

TEST(ExitFunctional, RejectsNonPositiveHeight) {
  EXPECT_THROW(exit_functional(0.0, config(1.0, 10)), ConfigError);
}

TEST(KQuadrature, EightNodesMatchOracleRule) {
  KQuadratureOptions opt;
  opt.nodes = 8;
  opt.check_doubled = false;
  const KBreakdown k = k_by_quadrature(opt, config(1.0, 200000));
  EXPECT_NEAR(k.k_value.mean, nystrom().k_quadrature(8), 4.0 * k.k_value.std_error + 1e-5);
  EXPECT_NEAR(k.k_value.mean, kReferenceK, 4.0 * k.k_value.std_error + 1e-4);
  EXPECT_EQ(k.node_estimates.size(), 8u);
  EXPECT_GT(k.mean_steps, 1.0);
}

TEST(KQuadrature, RejectsFewNodes) {
  KQuadratureOptions opt;
  opt.nodes = 7;
  EXPECT_THROW(k_by_quadrature(opt, config(1.0, 100)), ConfigError);
}

TEST(KQuadrature, StderrShrinksWithBudget) {
  KQuadratureOptions opt;
  opt.nodes = 8;
  opt.check_doubled = false;
  const KBreakdown a = k_by_quadrature(opt, config(1.0, 20000));
  const KBreakdown b = k_by_quadrature(opt, config(1.0, 80000));
  EXPECT_NEAR(b.k_value.std_error / a.k_value.std_error, 0.5, 0.05);
}

TEST(KQuadrature, DoubledRuleAgrees) {
  KQuadratureOptions opt;
  opt.nodes = 32;
  opt.doubled_budget_fraction = 1.0;
  const KBreakdown k = k_by_quadrature(opt, config(1.0, 20000));
  ASSERT_TRUE(k.doubled_checked);
  EXPECT_NEAR(k.k_value.mean, k.k_doubled.mean, 4.0 * combined_stderr(k.k_value, k.k_doubled));
  EXPECT_EQ(k.quadrature_error, std::abs(k.k_value.mean - k.k_doubled.mean));
  EXPECT_FALSE(k.quadrature_limited);
}

TEST(KQuadrature, IndependentOfStepRadius) {
  KQuadratureOptions opt;
  opt.nodes = 8;
  opt.check_doubled = false;
  const KBreakdown a = k_by_quadrature(opt, config(1.0, 5000));
  const KBreakdown b = k_by_quadrature(opt, config(0.125, 5000));
  EXPECT_NEAR(a.k_value.mean, b.k_value.mean, 1e-12);
}

TEST(KQuadrature, NeymanReallocationKeepsTotalBudget) {
  KQuadratureOptions opt;
  opt.nodes = 8;
  opt.check_doubled = false;
  opt.reallocate = true;
  opt.pilot_samples = 5000;
  const KBreakdown k = k_by_quadrature(opt, config(1.0, 20000));
  EXPECT_LE(k.k_value.n, 8u * 20000u + 8u * 1000u);
  EXPECT_GE(k.k_value.n, 8u * 20000u - 8u);
  EXPECT_NEAR(k.k_value.mean, nystrom().k_quadrature(8), 4.0 * k.k_value.std_error + 1e-5);
}

TEST(KLimit, ApproachesOracleProfile) {
  const std::vector<double> heights = {1.0, 2.0, 4.0, 8.0};
  const KLimitResult r = k_by_limit(heights, config(1.0, 200000));
  ASSERT_EQ(r.increments.size(), 3u);
  for (std::size_t i = 0; i < heights.size(); ++i) {
    EXPECT_NEAR(r.estimates[i].mean, nystrom()(heights[i]), 4.0 * r.estimates[i].std_error + kOracleTol);
  }
  for (std::size_t i = 0; i < r.increments.size(); ++i) {
    const double expected = nystrom()(heights[i + 1]) - nystrom()(heights[i]);
    EXPECT_NEAR(r.increments[i], expected, 4.0 * r.increment_stderr[i] + kOracleTol);
  }
  EXPECT_EQ(r.terminal.mean, r.estimates.back().mean);
  EXPECT_NEAR(r.terminal.mean, kReferenceK, 4.0 * r.terminal.std_error + kOracleTol);
}

TEST(KLimit, RejectsBadSchedules) {
  EXPECT_THROW(k_by_limit(std::vector<double>{}, config(1.0, 10)), ConfigError);
  EXPECT_THROW(k_by_limit(std::vector<double>{2.0, 1.0}, config(1.0, 10)), ConfigError);
  EXPECT_THROW(k_by_limit(std::vector<double>{0.0, 1.0}, config(1.0, 10)), ConfigError);
}
