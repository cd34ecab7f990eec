#include "timewalk/synthetic.hpp"

#include <algorithm>
#include <cmath>

#include "timewalk/rng.hpp"

namespace timewalk {

namespace {

// draw streams
constexpr std::uint64_t kStreamSource = 1;
constexpr std::uint64_t kStreamTarget = 2;
constexpr std::uint64_t kStreamTime = 3;

std::uint64_t draw_mod(const CounterRng& rng, std::uint64_t stream, std::uint64_t i,
                       std::uint64_t bound) {
  return rng.bits(stream, i, 0) % bound;
}

}  // namespace

std::vector<TemporalEdge> make_uniform_graph(std::uint64_t node_count, std::uint64_t edge_count,
                                             Timestamp t_max, std::uint64_t seed) {
  const CounterRng rng(seed);
  std::vector<TemporalEdge> edges;
  edges.reserve(edge_count);
  for (std::uint64_t i = 0; i < edge_count; ++i) {
    edges.push_back({static_cast<NodeId>(draw_mod(rng, kStreamSource, i, node_count)),
                     static_cast<NodeId>(draw_mod(rng, kStreamTarget, i, node_count)),
                     static_cast<Timestamp>(draw_mod(rng, kStreamTime, i,
                                                     static_cast<std::uint64_t>(t_max) + 1))});
  }
  return edges;
}

std::vector<TemporalEdge> make_hub_skewed_graph(std::uint64_t background_nodes,
                                                std::uint64_t background_edges,
                                                std::uint64_t seed) {
  const CounterRng rng(seed);
  std::vector<TemporalEdge> edges;

  NodeId next_id = static_cast<NodeId>(background_nodes);
  auto fresh = [&next_id] { return next_id++; };

  // Feeder funnel: `width` single-out-degree feeders pointing at `hub` with
  // distinct timestamps, so every feeder walk converges on the hub one step
  // after the per-node starts.
  auto plant_funnel = [&](std::uint64_t width, Timestamp t0) {
    const NodeId hub = fresh();
    for (std::uint64_t i = 0; i < width; ++i) {
      edges.push_back({fresh(), hub, t0 + static_cast<Timestamp>(i)});
    }
    return hub;
  };

  // Hub out-ladders at `groups` distinct timestamps decide the hub's G and
  // keep converged walks alive for one more step.
  auto plant_out_ladder = [&](NodeId hub, std::uint64_t groups, Timestamp t0,
                              std::uint64_t sink_count) {
    std::vector<NodeId> sinks(sink_count);
    for (auto& s : sinks) s = fresh();
    for (std::uint64_t g = 0; g < groups; ++g) {
      edges.push_back({hub, sinks[g % sink_count], t0 + static_cast<Timestamp>(g)});
    }
  };

  // Mega hub: 2600 feeders x 10 walks per node = 26000 co-located walks,
  // split into ceil(26000/8192) = 4 sub-tasks. G = 5000 exceeds the block
  // cache cap.
  const NodeId mega = plant_funnel(2600, 1000);
  plant_out_ladder(mega, 5000, 10000, 200);

  // Unsplit block-tier tasks: 40 feeders -> 400 walks.
  const NodeId block_direct_hub = plant_funnel(40, 1000);
  plant_out_ladder(block_direct_hub, 4500, 10000, 50);  // G > 4096
  const NodeId block_cached_hub = plant_funnel(40, 1000);
  plant_out_ladder(block_cached_hub, 150, 10000, 50);  // G <= 4096

  // Warp-tier tasks: 3 feeders -> 30 walks.
  const NodeId warp_direct_hub = plant_funnel(3, 1000);
  plant_out_ladder(warp_direct_hub, 700, 10000, 20);  // G > 512
  const NodeId warp_cached_hub = plant_funnel(3, 1000);
  plant_out_ladder(warp_cached_hub, 60, 10000, 20);  // G <= 512

  // Spreader: 10 walks fan out over 40 targets, leaving W < w_warp runs.
  plant_out_ladder(fresh(), 40, 500, 40);

  // Power-law-ish background: targets concentrate on low ids.
  for (std::uint64_t i = 0; i < background_edges; ++i) {
    const double u = static_cast<double>(rng.bits(kStreamTarget, i, 1) >> 11) * 0x1.0p-53;
    const auto dst = static_cast<NodeId>(static_cast<double>(background_nodes) * u * u * u);
    edges.push_back({static_cast<NodeId>(draw_mod(rng, kStreamSource, i, background_nodes)),
                     std::min<NodeId>(dst, static_cast<NodeId>(background_nodes) - 1),
                     static_cast<Timestamp>(draw_mod(rng, kStreamTime, i, 20000))});
  }
  return edges;
}

std::vector<TemporalEdge> make_mega_hub_graph(std::uint32_t feeder_count, std::uint64_t seed) {
  const CounterRng rng(seed);
  std::vector<TemporalEdge> edges;
  const NodeId hub = 0;
  NodeId next_id = 1;
  for (std::uint32_t i = 0; i < feeder_count; ++i) {
    edges.push_back({next_id++, hub, 100 + static_cast<Timestamp>(i)});
  }
  // Out-ladder past the newest feeder time so converged walks take one more hop.
  std::vector<NodeId> sinks(16);
  for (auto& s : sinks) s = next_id++;
  const Timestamp t0 = 100 + static_cast<Timestamp>(feeder_count) + 100;
  for (std::uint32_t g = 0; g < 64; ++g) {
    edges.push_back({hub, sinks[g % sinks.size()], t0 + static_cast<Timestamp>(g)});
  }
  // Light uniform background for start-edge variety.
  const NodeId bg_base = next_id;
  for (std::uint64_t i = 0; i < 1000; ++i) {
    edges.push_back({bg_base + static_cast<NodeId>(draw_mod(rng, kStreamSource, i, 100)),
                     bg_base + static_cast<NodeId>(draw_mod(rng, kStreamTarget, i, 100)),
                     static_cast<Timestamp>(draw_mod(rng, kStreamTime, i, 5000))});
  }
  return edges;
}

std::vector<TemporalEdge> make_time_ladder_graph(std::uint64_t edge_count, std::uint32_t rungs,
                                                 std::uint64_t seed) {
  const CounterRng rng(seed);
  const std::uint64_t node_count = std::max<std::uint64_t>(2, edge_count / rungs);
  std::vector<TemporalEdge> edges;
  edges.reserve(node_count * rungs);
  std::uint64_t i = 0;
  for (std::uint64_t v = 0; v < node_count; ++v) {
    for (std::uint32_t r = 0; r < rungs; ++r, ++i) {
      edges.push_back({static_cast<NodeId>(v),
                       static_cast<NodeId>(draw_mod(rng, kStreamTarget, i, node_count)),
                       static_cast<Timestamp>(r)});
    }
  }
  return edges;
}

}  // namespace timewalk
