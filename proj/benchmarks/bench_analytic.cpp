#include <benchmark/benchmark.h>

#include "jmgrow/analytic.hpp"
#include "jmgrow/model.hpp"

using namespace jmgrow;

namespace {

ModelSpec discrete_spec() {
  ModelSpec spec;
  spec.speed = SpeedDistribution::finite_discrete({1.0, 3.0}, {0.5, 0.5});
  return spec;
}

void BM_MeanF(benchmark::State& state) {
  const ModelSpec spec = discrete_spec();
  for (auto _ : state) benchmark::DoNotOptimize(mean_F(spec));
}
BENCHMARK(BM_MeanF);

void BM_VarianceBounds(benchmark::State& state) {
  const ModelSpec spec = discrete_spec();
  for (auto _ : state) {
    const auto lower = var_lower_bound(spec);
    benchmark::DoNotOptimize(lower.value);
    benchmark::DoNotOptimize(var_upper_bound(spec));
  }
}
BENCHMARK(BM_VarianceBounds);

void BM_LaTau(benchmark::State& state) {
  double x = 0.01;
  for (auto _ : state) {
    benchmark::DoNotOptimize(l_a_tau(1.0, 0.0, 2, x));
    x = x < 100.0 ? x * 1.7 : 0.01;
  }
}
BENCHMARK(BM_LaTau);

void BM_EllKernel(benchmark::State& state) {
  const auto theta = TimeIntensity::power_law(-0.5);
  for (auto _ : state) benchmark::DoNotOptimize(ell_kernel(0.7, 1.1, theta, 2, 1.0));
}
BENCHMARK(BM_EllKernel);

}  // namespace

BENCHMARK_MAIN();
