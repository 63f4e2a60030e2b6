#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <numeric>
#include <set>
#include <stdexcept>

#include "dhm/errors.hpp"
#include "dhm/fast_sincos.hpp"
#include "dhm/parallel.hpp"
#include "dhm/quadrature.hpp"
#include "dhm/rng.hpp"
#include "dhm/stats.hpp"

using namespace dhm;

TEST(RunningMoments, MatchesTwoPass) {
  const std::vector<double> xs = {1e9 + 4, 1e9 + 7, 1e9 + 13, 1e9 + 16};
  RunningMoments m;
  for (double x : xs) m.push(x);
  EXPECT_DOUBLE_EQ(m.mean(), 1e9 + 10);
  // Sample variance of {4, 7, 13, 16} is 30.
  EXPECT_NEAR(m.variance(), 30.0, 1e-6);
  EXPECT_NEAR(m.std_error(), std::sqrt(30.0 / 4.0), 1e-9);
}

TEST(RunningMoments, MergeEqualsSequential) {
  SplitMix64 rng(3);
  RunningMoments all, a, b;
  for (int i = 0; i < 1000; ++i) {
    const double x = rng.uniform();
    all.push(x);
    (i < 377 ? a : b).push(x);
  }
  a.merge(b);
  EXPECT_EQ(a.count(), all.count());
  EXPECT_NEAR(a.mean(), all.mean(), 1e-15);
  EXPECT_NEAR(a.variance(), all.variance(), 1e-15);
  RunningMoments empty;
  empty.merge(all);
  EXPECT_EQ(empty.count(), 1000u);
  EXPECT_DOUBLE_EQ(empty.mean(), all.mean());
}

TEST(RunningMoments, SingleSampleHasZeroError) {
  RunningMoments m;
  m.push(1.0);
  const MCEstimate e = m.estimate(2);
  EXPECT_EQ(e.mean, 1.0);
  EXPECT_EQ(e.std_error, 0.0);
  EXPECT_EQ(e.censored, 2u);
}

TEST(LeastSquares, RecoversExactLine) {
  const std::vector<double> x = {0.1, 0.2, 0.4, 0.8};
  std::vector<double> y, s(4, 0.01);
  for (double v : x) y.push_back(3.0 - 2.0 * v);
  const LinearFit f = weighted_polyfit(x, y, s, 1);
  EXPECT_NEAR(f.coef[0], 3.0, 1e-12);
  EXPECT_NEAR(f.coef[1], -2.0, 1e-12);
  EXPECT_NEAR(f.chi2, 0.0, 1e-16);
}

TEST(LeastSquares, WeightedMeanStderr) {
  const std::vector<double> x = {1.0, 2.0, 3.0};
  const std::vector<double> y = {1.0, 2.0, 4.0};
  const std::vector<double> s = {1.0, 2.0, 2.0};
  const LinearFit f = weighted_polyfit(x, y, s, 0);
  // Inverse-variance weights 1, 1/4, 1/4.
  EXPECT_NEAR(f.coef[0], (1.0 + 0.5 + 1.0) / 1.5, 1e-14);
  EXPECT_NEAR(f.std_err[0], 1.0 / std::sqrt(1.5), 1e-14);
}

TEST(LeastSquares, UnweightedUsesResidualVariance) {
  const std::vector<double> x = {0.0, 1.0, 2.0, 3.0};
  const std::vector<double> y = {0.0, 1.0, 1.0, 2.0};
  const LinearFit f = weighted_polyfit(x, y, {}, 1);
  EXPECT_NEAR(f.coef[0], 0.1, 1e-12);
  EXPECT_NEAR(f.coef[1], 0.6, 1e-12);
  // Residuals -0.1, 0.3, -0.3, 0.1: s^2 = 0.2 / 2, var(b) = s^2 / Sxx, Sxx = 5.
  EXPECT_NEAR(f.std_err[1], std::sqrt(0.1 / 5.0), 1e-12);
}

TEST(LeastSquares, RejectsClusteredDesign) {
  const std::vector<double> x = {1.0, 1.0 + 1e-14, 1.0 + 2e-14};
  const std::vector<double> y = {1.0, 2.0, 3.0};
  EXPECT_THROW(weighted_polyfit(x, y, {}, 2), ConfigError);
}

TEST(Rng, TrajectoryStreamsAreDeterministicAndDistinct) {
  SplitMix64 a = trajectory_rng(7, 3, 11), b = trajectory_rng(7, 3, 11);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.next(), b.next());
  std::set<std::uint64_t> firsts;
  for (std::uint64_t s = 0; s < 4; ++s) {
    for (std::uint64_t i = 0; i < 1000; ++i) firsts.insert(trajectory_rng(7, s, i).next());
  }
  EXPECT_EQ(firsts.size(), 4000u);
  EXPECT_NE(stream_key(1, 2), stream_key(2, 1));
}

TEST(Rng, UniformIsInUnitIntervalWithMeanHalf) {
  SplitMix64 r(99);
  RunningMoments m;
  for (int i = 0; i < 1'000'000; ++i) {
    const double u = r.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    m.push(u);
  }
  EXPECT_NEAR(m.mean(), 0.5, 4.0 * m.std_error());
  EXPECT_NEAR(m.variance(), 1.0 / 12.0, 1e-3);
}

TEST(Rng, MixGammaIsOdd) {
  for (std::uint64_t z = 0; z < 1000; ++z) EXPECT_EQ(mix_gamma(z) & 1u, 1u);
}

TEST(TurnSinCos, MatchesLibm) {
  SplitMix64 r(5);
  double worst = 0.0;
  for (int i = 0; i < 200000; ++i) {
    const auto turn = static_cast<std::uint32_t>(r.next());
    const double a = 2.0 * std::numbers::pi * (turn + 0.5) / 4294967296.0;
    const auto [c, s] = kTurnSinCos(turn);
    worst = std::max({worst, std::abs(c - std::cos(a)), std::abs(s - std::sin(a))});
  }
  EXPECT_LT(worst, 2e-15);
}

TEST(TurnSinCos, CoversQuadrantEdges) {
  for (std::uint32_t turn : {0u, 0x3fffffffu, 0x40000000u, 0x7fffffffu, 0x80000000u, 0xffffffffu}) {
    const double a = 2.0 * std::numbers::pi * (turn + 0.5) / 4294967296.0;
    const auto [c, s] = kTurnSinCos(turn);
    EXPECT_NEAR(c, std::cos(a), 2e-15);
    EXPECT_NEAR(s, std::sin(a), 2e-15);
  }
}

TEST(Parallel, ResultsIndependentOfWorkerCount) {
  const TaskPlan plan{10000, 777};
  auto run = [&](unsigned threads) {
    return run_tasks<double>(plan.tasks(), threads, [&](std::uint64_t t) {
      double s = 0.0;
      for (std::uint64_t i = plan.begin(t); i < plan.end(t); ++i) s += trajectory_rng(1, 1, i).uniform();
      return s;
    });
  };
  const auto one = run(1), four = run(4);
  ASSERT_EQ(one.size(), 13u);
  for (std::size_t i = 0; i < one.size(); ++i) EXPECT_EQ(one[i], four[i]);
  EXPECT_EQ(plan.end(12), 10000u);
}

TEST(Parallel, RethrowsLowestFailingTask) {
  auto fn = [](std::uint64_t t) -> int {
    if (t == 5 || t == 9) throw std::runtime_error("task " + std::to_string(t));
    return 0;
  };
  try {
    run_tasks<int>(12, 1, fn);
    FAIL();
  } catch (const std::runtime_error& e) {
    EXPECT_STREQ(e.what(), "task 5");
  }
}

TEST(Quadrature, GaussLegendreIntegratesPolynomialsExactly) {
  const QuadratureRule r = gauss_legendre(8, 0.0, 2.0);
  double s = 0.0;
  for (std::size_t i = 0; i < r.nodes.size(); ++i) s += r.weights[i] * std::pow(r.nodes[i], 15);
  EXPECT_NEAR(s, std::pow(2.0, 16) / 16.0, 1e-9);
  const QuadratureRule ref = gauss_legendre(20);
  EXPECT_NEAR(integrate_gl(ref, 0.0, std::numbers::pi, [](double x) { return std::sin(x); }), 2.0, 1e-14);
  EXPECT_NEAR(std::accumulate(ref.weights.begin(), ref.weights.end(), 0.0), 2.0, 1e-14);
}
