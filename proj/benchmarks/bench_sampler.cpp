#include <benchmark/benchmark.h>

#include "jmgrow/rng.hpp"
#include "jmgrow/sampler.hpp"

using namespace jmgrow;

namespace {

// Realization size scales with the intensity multiplier; ~10 seeds per unit
// intensity for this spec, so the range below covers ~1e2 to ~1e5 seeds.
void BM_SampleRealization(benchmark::State& state) {
  ModelSpec spec;
  spec.dimension = 2;
  spec.window = WindowGeometry::box({1.0, 1.0});
  spec.speed = SpeedDistribution::finite_discrete({1.0, 3.0}, {0.5, 0.5});
  spec.intensity_multiplier = static_cast<double>(state.range(0));

  std::uint64_t substream = 0;
  std::size_t seeds = 0;
  for (auto _ : state) {
    RngStream rng(42, substream++);
    const auto real = sample_realization(spec, rng);
    seeds += real.seeds.size();
    benchmark::DoNotOptimize(real.seeds.data());
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(seeds));
}
BENCHMARK(BM_SampleRealization)->Arg(10)->Arg(100)->Arg(1000)->Arg(10000);

}  // namespace
