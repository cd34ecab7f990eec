#include <benchmark/benchmark.h>

#include "timewalk/synthetic.hpp"
#include "timewalk/walk_engine.hpp"

using namespace timewalk;

namespace {

const EdgeStore& hub_store() {
  static const EdgeStore store =
      EdgeStore::build(make_hub_skewed_graph(2000, 20000, 1), DirectionMode::DirectedForward);
  return store;
}

const EdgeStore& ladder_store() {
  static const EdgeStore store =
      EdgeStore::build(make_time_ladder_graph(500000, 256, 2), DirectionMode::DirectedForward);
  return store;
}

void run_variant(benchmark::State& state, Variant variant) {
  WalkConfig config;
  config.seed = 3;
  std::uint64_t hops = 0;
  for (auto _ : state) {
    WalkStats stats;
    benchmark::DoNotOptimize(generate_walks(hub_store(), config, {}, variant, &stats));
    hops += stats.hops;
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(hops));
}

}  // namespace

static void BM_WalksCoop(benchmark::State& state) { run_variant(state, Variant::Coop); }
BENCHMARK(BM_WalksCoop)->Unit(benchmark::kMillisecond);

static void BM_WalksCoopDirect(benchmark::State& state) { run_variant(state, Variant::CoopDirect); }
BENCHMARK(BM_WalksCoopDirect)->Unit(benchmark::kMillisecond);

static void BM_WalksFullWalk(benchmark::State& state) { run_variant(state, Variant::FullWalk); }
BENCHMARK(BM_WalksFullWalk)->Unit(benchmark::kMillisecond);

static void BM_WalksByBias(benchmark::State& state) {
  WalkConfig config;
  config.start_mode = StartMode::Sampled;
  config.total_walks = 20000;
  config.walk_length = 80;
  config.bias = static_cast<BiasKind>(state.range(0));
  config.seed = 4;
  std::uint64_t hops = 0;
  for (auto _ : state) {
    WalkStats stats;
    benchmark::DoNotOptimize(generate_walks(ladder_store(), config, {}, Variant::Coop, &stats));
    hops += stats.hops;
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(hops));
}
BENCHMARK(BM_WalksByBias)
    ->Arg(static_cast<int>(BiasKind::UniformIndex))
    ->Arg(static_cast<int>(BiasKind::LinearIndex))
    ->Arg(static_cast<int>(BiasKind::ExponentialIndex))
    ->Arg(static_cast<int>(BiasKind::ExponentialWeight))
    ->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
