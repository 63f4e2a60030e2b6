#include <benchmark/benchmark.h>

#include "dhm/boundary_function.hpp"
#include "dhm/conformal_domain.hpp"
#include "dhm/correction_density.hpp"
#include "dhm/potential_kernel.hpp"

using namespace dhm;

namespace {

void BM_Charfn(benchmark::State& state) {
  double r = 0.0;
  for (auto _ : state) {
    r = r < 50.0 ? r + 0.013 : 0.0;
    benchmark::DoNotOptimize(charfn(r));
  }
}
BENCHMARK(BM_Charfn);

void BM_PotentialKernel(benchmark::State& state) {
  const double d = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(potential_a_radial(d));
}
BENCHMARK(BM_PotentialKernel)->Arg(2)->Arg(20)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_DensityTable(benchmark::State& state) {
  const AnalyticDomain d = AnalyticDomain::cardioid(0.2);
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sigma_d(d, kReferenceK, n));
}
BENCHMARK(BM_DensityTable)->Arg(256)->Arg(1024)->Arg(4096)->Unit(benchmark::kMicrosecond);

void BM_PredictedSlope(benchmark::State& state) {
  const AnalyticDomain d = AnalyticDomain::cardioid(0.2);
  const DensityTable t = sigma_d(d);
  const BoundaryFunction g = BoundaryFunction::parse("re2");
  for (auto _ : state) benchmark::DoNotOptimize(predicted_slope(t, d, g));
}
BENCHMARK(BM_PredictedSlope)->Unit(benchmark::kMicrosecond);

void BM_BoundaryProjection(benchmark::State& state) {
  const AnalyticDomain d = AnalyticDomain::cardioid(0.2);
  double t = 0.0;
  for (auto _ : state) {
    t = t < 6.0 ? t + 0.01 : 0.0;
    const PlanePoint z = d.boundary_point(t) + 0.03 * d.inward_normal(t);
    benchmark::DoNotOptimize(d.project_to_boundary(z));
  }
}
BENCHMARK(BM_BoundaryProjection);

}  // namespace

BENCHMARK_MAIN();
