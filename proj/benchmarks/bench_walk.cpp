#include <benchmark/benchmark.h>

#include "dhm/conformal_domain.hpp"
#include "dhm/rng.hpp"
#include "dhm/walk.hpp"

using namespace dhm;

namespace {

void BM_StepSample(benchmark::State& state) {
  SplitMix64 rng(1);
  PlanePoint z;
  for (auto _ : state) {
    z += unit_disk_point(rng.next());
    benchmark::DoNotOptimize(z);
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_StepSample);

void BM_VerticalIncrement(benchmark::State& state) {
  SplitMix64 rng(1);
  double y = 0.0;
  for (auto _ : state) {
    y += sample_im_increment(rng);
    benchmark::DoNotOptimize(y);
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_VerticalIncrement);

// Items are walk steps, so the rate reads as steps per second.
void BM_HalfPlaneTrajectory(benchmark::State& state) {
  const double y0 = static_cast<double>(state.range(0));
  std::uint64_t steps = 0, i = 0;
  for (auto _ : state) {
    SplitMix64 rng = trajectory_rng(1, streams::kHalfPlane, i++);
    const HalfPlaneExit e = halfplane_trajectory(rng, y0, 10'000'000, {});
    steps += e.steps;
    benchmark::DoNotOptimize(e.overshoot);
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(steps));
}
BENCHMARK(BM_HalfPlaneTrajectory)->Arg(1)->Arg(8)->Arg(32);

void BM_InsideTest(benchmark::State& state) {
  const AnalyticDomain d = state.range(0) ? AnalyticDomain::cardioid(0.2) : AnalyticDomain::unit_disk();
  SplitMix64 rng(2);
  for (auto _ : state) {
    const PlanePoint z = 1.2 * unit_disk_point(rng.next());
    benchmark::DoNotOptimize(d.inside(z));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_InsideTest)->Arg(0)->Arg(1);

void BM_DomainExit(benchmark::State& state) {
  const AnalyticDomain d = state.range(0) ? AnalyticDomain::cardioid(0.2) : AnalyticDomain::unit_disk();
  const double h = 0.05;
  std::uint64_t steps = 0, i = 0;
  for (auto _ : state) {
    SplitMix64 rng = trajectory_rng(1, streams::kDomainExit, i++);
    const DomainTrajectory t = walk_domain(rng, PlanePoint{0.0, 0.0}, d, h, 10'000'000);
    steps += t.steps;
    benchmark::DoNotOptimize(t.exit);
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(steps));
}
BENCHMARK(BM_DomainExit)->Arg(0)->Arg(1);

}  // namespace

BENCHMARK_MAIN();
