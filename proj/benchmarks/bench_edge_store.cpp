#include <benchmark/benchmark.h>

#include "timewalk/edge_store.hpp"
#include "timewalk/rng.hpp"
#include "timewalk/synthetic.hpp"
#include "timewalk/window_manager.hpp"

using namespace timewalk;

static void BM_BuildIndex(benchmark::State& state) {
  const auto edges = make_uniform_graph(state.range(0) / 20, state.range(0), 1000000, 5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(EdgeStore::build(edges, DirectionMode::DirectedForward));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_BuildIndex)->Arg(10000)->Arg(100000)->Arg(1000000)->Unit(benchmark::kMillisecond);

static void BM_BuildIndexUndirected(benchmark::State& state) {
  const auto edges = make_uniform_graph(state.range(0) / 20, state.range(0), 1000000, 6);
  for (auto _ : state) {
    benchmark::DoNotOptimize(EdgeStore::build(edges, DirectionMode::Undirected));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_BuildIndexUndirected)->Arg(100000)->Unit(benchmark::kMillisecond);

static void BM_TemporalNeighborhood(benchmark::State& state) {
  const auto edges = make_uniform_graph(1000, 500000, 1000000, 7);
  const auto store = EdgeStore::build(edges, DirectionMode::DirectedForward);
  const CounterRng rng(8);
  std::uint64_t i = 0;
  for (auto _ : state) {
    const auto v = static_cast<NodeId>(rng.bits(i, 0, 0) % 1000);
    const auto t = static_cast<Timestamp>(rng.bits(i, 1, 0) % 1000000);
    ++i;
    benchmark::DoNotOptimize(store.temporal_neighborhood(v, t, WalkDirection::Forward));
  }
}
BENCHMARK(BM_TemporalNeighborhood);

static void BM_WindowIngest(benchmark::State& state) {
  // steady-state batch merge + rebuild with a 3-batch window
  const std::uint64_t batch_edges = state.range(0);
  const CounterRng rng(9);
  std::vector<std::vector<TemporalEdge>> batches;
  for (std::uint64_t b = 0; b < 8; ++b) {
    std::vector<TemporalEdge> batch;
    for (std::uint64_t i = 0; i < batch_edges; ++i) {
      batch.push_back({static_cast<NodeId>(rng.bits(b, i, 0) % 5000),
                       static_cast<NodeId>(rng.bits(b, i, 1) % 5000),
                       static_cast<Timestamp>(b * 1000 + rng.bits(b, i, 2) % 1000)});
    }
    batches.push_back(std::move(batch));
  }
  for (auto _ : state) {
    WindowManager window({3000, DirectionMode::DirectedForward});
    for (const auto& batch : batches) window.ingest_batch(batch);
  }
  state.SetItemsProcessed(state.iterations() * batch_edges * 8);
}
BENCHMARK(BM_WindowIngest)->Arg(50000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
