#include <benchmark/benchmark.h>

#include <cmath>

#include "timewalk/rng.hpp"
#include "timewalk/samplers.hpp"

using namespace timewalk;

static void BM_PickIndexUniform(benchmark::State& state) {
  const CounterRng rng(1);
  const std::size_t n = state.range(0);
  std::uint64_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(pick_index_uniform(rng.uniform(i++, 0, 0), n));
  }
}
BENCHMARK(BM_PickIndexUniform)->Arg(16)->Arg(4096);

static void BM_PickIndexLinear(benchmark::State& state) {
  const CounterRng rng(2);
  const std::size_t n = state.range(0);
  std::uint64_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(pick_index_linear(rng.uniform(i++, 0, 0), n));
  }
}
BENCHMARK(BM_PickIndexLinear)->Arg(16)->Arg(4096);

static void BM_PickIndexExponential(benchmark::State& state) {
  const CounterRng rng(3);
  const std::size_t n = state.range(0);
  std::uint64_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(pick_index_exponential(rng.uniform(i++, 0, 0), n));
  }
}
BENCHMARK(BM_PickIndexExponential)->Arg(16)->Arg(512)->Arg(4096);

static void BM_PickWeighted(benchmark::State& state) {
  const CounterRng rng(4);
  const std::size_t n = state.range(0);
  std::vector<Timestamp> times(n);
  for (std::size_t i = 0; i < n; ++i) times[i] = static_cast<Timestamp>(i / 3);
  const auto cw = build_cumulative_weights(times);
  std::uint64_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(pick_weighted(rng.uniform(i++, 0, 0), cw));
  }
}
BENCHMARK(BM_PickWeighted)->Arg(16)->Arg(4096);

static void BM_BuildCumulativeWeights(benchmark::State& state) {
  const std::size_t n = state.range(0);
  std::vector<Timestamp> times(n);
  for (std::size_t i = 0; i < n; ++i) times[i] = static_cast<Timestamp>(i / 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_cumulative_weights(times));
  }
}
BENCHMARK(BM_BuildCumulativeWeights)->Arg(4096);

BENCHMARK_MAIN();
