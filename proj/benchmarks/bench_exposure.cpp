#include <benchmark/benchmark.h>

#include "jmgrow/exposure.hpp"
#include "jmgrow/rng.hpp"
#include "jmgrow/sampler.hpp"

using namespace jmgrow;

namespace {

Realization make_realization(double intensity, double window_scale) {
  ModelSpec spec;
  spec.dimension = 2;
  spec.window = WindowGeometry::box({1.0, 1.0});
  spec.window_scale = window_scale;
  spec.speed = SpeedDistribution::finite_discrete({1.0, 3.0}, {0.5, 0.5});
  spec.intensity_multiplier = intensity;
  RngStream rng(42, 0);
  return sample_realization(spec, rng);
}

// Crowded regime: ~1e4 seeds in the unit window. The naive scan meets a
// shader almost immediately here, so this is its best case.
void BM_ExposureNaiveCrowded(benchmark::State& state) {
  const auto real = make_realization(977.0, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(exposed_naive(real).count);
  state.counters["seeds"] = static_cast<double>(real.seeds.size());
}
BENCHMARK(BM_ExposureNaiveCrowded)->Unit(benchmark::kMillisecond);

void BM_ExposureIndexedCrowded(benchmark::State& state) {
  const auto real = make_realization(977.0, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(exposed_indexed(real).count);
  state.counters["seeds"] = static_cast<double>(real.seeds.size());
}
BENCHMARK(BM_ExposureIndexedCrowded)->Unit(benchmark::kMillisecond);

// Spread regime: the same ~1e4 seeds over a 40 x 40 window, the large-window
// scaling the grid index is built for.
void BM_ExposureNaiveSpread(benchmark::State& state) {
  const auto real = make_realization(5.7, 1600.0);
  for (auto _ : state) benchmark::DoNotOptimize(exposed_naive(real).count);
  state.counters["seeds"] = static_cast<double>(real.seeds.size());
}
BENCHMARK(BM_ExposureNaiveSpread)->Unit(benchmark::kMillisecond);

void BM_ExposureIndexedSpread(benchmark::State& state) {
  const auto real = make_realization(5.7, 1600.0);
  for (auto _ : state) benchmark::DoNotOptimize(exposed_indexed(real).count);
  state.counters["seeds"] = static_cast<double>(real.seeds.size());
}
BENCHMARK(BM_ExposureIndexedSpread)->Unit(benchmark::kMillisecond);

}  // namespace
