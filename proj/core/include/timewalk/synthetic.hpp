#pragma once

#include <cstdint>
#include <vector>

#include "timewalk/types.hpp"

namespace timewalk {

/// Uniform-random temporal graph: endpoints uniform over [0, node_count),
/// timestamps uniform over [0, t_max].
std::vector<TemporalEdge> make_uniform_graph(std::uint64_t node_count, std::uint64_t edge_count,
                                             Timestamp t_max, std::uint64_t seed);

/// Power-law background plus planted funnels of graded widths and
/// timestamp-group counts. Under default thresholds and 10 walks per node,
/// per-node walks exercise every dispatch tier: solo, warp and block tiers
/// in both cached and direct flavors, and a mega-hub wide enough to split.
std::vector<TemporalEdge> make_hub_skewed_graph(std::uint64_t background_nodes,
                                                std::uint64_t background_edges,
                                                std::uint64_t seed);

/// One hub fed by `feeder_count` single-out-degree nodes. With k walks per
/// node, feeder_count * k walks co-locate at the hub one step in, forcing
/// ceil(W / w_max) sub-tasks.
std::vector<TemporalEdge> make_mega_hub_graph(std::uint32_t feeder_count, std::uint64_t seed);

/// Every node carries one out-edge per rung timestamp 0..rungs-1 to a random
/// target, so per-node group counts and achievable walk lengths are
/// independent of total edge count. Used by the scaling suites.
std::vector<TemporalEdge> make_time_ladder_graph(std::uint64_t edge_count, std::uint32_t rungs,
                                                 std::uint64_t seed);

}  // namespace timewalk
