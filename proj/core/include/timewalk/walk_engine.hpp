#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "timewalk/edge_store.hpp"
#include "timewalk/samplers.hpp"
#include "timewalk/types.hpp"

namespace timewalk {

/// Dispatch-plane thresholds. W (walks co-located at one node) selects the
/// execution unit; G (the node's distinct-timestamp-group count) selects
/// whether per-node index metadata is copied into task-local scratch.
struct TierThresholds {
  std::uint32_t w_warp{4};      // solo iff W < w_warp
  std::uint32_t block_dim{256}; // warp iff w_warp <= W <= block_dim, block above
  std::uint32_t w_max{8192};    // block runs above this split into sub-tasks
  std::uint32_t g_warp_cap{512};
  std::uint32_t g_block_cap{4096};

  void validate() const;
};

enum class StartMode : std::uint8_t {
  PerNode,  // k walks from every node with a non-empty region
  Sampled,  // N start edges drawn under the start bias
};

/// Execution variants: the full cooperative scheduler, the scheduler with
/// task-local metadata caching disabled, and the one-worker-per-walk
/// baseline. All three produce identical walks; they differ in dispatch.
enum class Variant : std::uint8_t { Coop, CoopDirect, FullWalk };

struct WalkConfig {
  std::uint32_t walk_length{80};  // maximum recorded (node, time) entries
  StartMode start_mode{StartMode::PerNode};
  std::uint32_t walks_per_node{10};
  std::uint64_t total_walks{0};  // sampled mode
  BiasKind bias{BiasKind::ExponentialWeight};
  BiasKind start_bias{BiasKind::UniformIndex};
  std::optional<Node2VecParams> node2vec;
  bool node2vec_temporal_adjacency{false};
  WalkDirection direction{WalkDirection::Forward};
  std::uint64_t seed{0};

  void validate() const;
};

/// Fixed-stride walk output. Entry 0 is the start node with a sentinel time;
/// each later entry j satisfies: (nodes[j-1], nodes[j]) is a snapshot edge at
/// times[j], strictly beyond times[j-1] in the walk direction. Walks that
/// never left their start node (length < 2) are suppressed by the writers.
struct WalkSet {
  std::uint32_t stride{};
  std::uint64_t walk_count{};
  std::vector<NodeId> nodes;
  std::vector<Timestamp> times;
  std::vector<std::uint32_t> lengths;

  [[nodiscard]] NodeId node_at(std::uint64_t walk, std::uint32_t slot) const {
    return nodes[walk * stride + slot];
  }
  [[nodiscard]] Timestamp time_at(std::uint64_t walk, std::uint32_t slot) const {
    return times[walk * stride + slot];
  }

  friend bool operator==(const WalkSet&, const WalkSet&) = default;
};

/// Per-walk progress, struct-of-arrays for the scheduling passes.
struct WalkStates {
  std::vector<InternalNode> current;
  std::vector<Timestamp> time;
  std::vector<InternalNode> prev;
  std::vector<std::uint8_t> has_prev;
  std::vector<std::uint8_t> alive;
  std::vector<std::uint32_t> length;

  [[nodiscard]] std::size_t size() const { return current.size(); }
};

enum class Tier : std::uint8_t { Solo, WarpCached, WarpDirect, BlockCached, BlockDirect };

/// One per-(node, step) unit of cooperative work.
struct DispatchTask {
  InternalNode node{};
  Tier tier{};
  std::uint32_t begin{};  // slice of StepPlan::walk_ids
  std::uint32_t end{};
  std::uint32_t sub_task_index{};
  std::uint32_t sub_task_count{1};  // > 1 marks a mega-hub split
};

/// The five terminal task lists of one scheduling step. Slices are disjoint
/// and jointly cover every alive walk exactly once.
struct StepPlan {
  std::vector<std::uint32_t> walk_ids;  // alive walks, grouped by current node
  std::vector<DispatchTask> solo;
  std::vector<DispatchTask> warp_cached;
  std::vector<DispatchTask> warp_direct;
  std::vector<DispatchTask> block_cached;
  std::vector<DispatchTask> block_direct;

  [[nodiscard]] bool empty() const {
    return solo.empty() && warp_cached.empty() && warp_direct.empty() &&
           block_cached.empty() && block_direct.empty();
  }
};

struct TierCounts {
  std::uint64_t solo{};
  std::uint64_t warp_cached{};
  std::uint64_t warp_direct{};
  std::uint64_t block_cached{};
  std::uint64_t block_direct{};
  std::uint64_t multi_block{};  // sub-tasks of split block-tier runs

  [[nodiscard]] std::uint64_t total() const {
    return solo + warp_cached + warp_direct + block_cached + block_direct + multi_block;
  }
};

struct WalkStats {
  std::uint64_t walks{};  // walks emitted (at least one hop recorded)
  std::uint64_t hops{};
  std::uint64_t steps{};  // scheduled steps executed
  TierCounts tiers;
  double wall_seconds{};
};

/// Seed walk states and record step-0 entries (the start sentinel, plus the
/// start edge in sampled mode). Per-node mode on an empty store yields zero
/// walks; sampled mode on an empty store is a contract violation.
void init_walks(const EdgeStore& store, const WalkConfig& config, WalkStates& states,
                WalkSet& walks);

/// One pass of per-step scheduling: flag and compact alive walks, group them
/// by current node, and assign each (node, W) run a tier from the dispatch
/// plane, splitting block-tier runs wider than w_max into contiguous
/// sub-tasks.
StepPlan schedule_step(const WalkStates& states, const std::vector<std::uint32_t>& candidates,
                       const EdgeStore& store, const TierThresholds& thresholds);

/// Advance every walk of one task by one hop. Cached tiers copy the node's
/// timestamp-group metadata into `scratch` once and serve all member walks
/// from it; direct tiers read the shared index. Results are identical.
struct TaskScratch {
  std::vector<TsGroupMark> group_marks;
};

void execute_task(const DispatchTask& task, const StepPlan& plan, const EdgeStore& store,
                  const WalkConfig& config, bool use_scratch, TaskScratch& scratch,
                  WalkStates& states, WalkSet& walks);

/// Pick a start edge: the start bias selects a timestamp group, u2 selects
/// uniformly within the group's slice. Returns a time-sorted edge index.
std::size_t sample_start_edge(const EdgeStore& store, BiasKind bias, double u1, double u2);

/// Generate walks under per-step hierarchical cooperative scheduling
/// (Variant::Coop / Variant::CoopDirect) or the independent full-walk
/// baseline (Variant::FullWalk). For a fixed seed all variants produce
/// identical WalkSets.
WalkSet generate_walks(const EdgeStore& store, const WalkConfig& config,
                       const TierThresholds& thresholds = {}, Variant variant = Variant::Coop,
                       WalkStats* stats = nullptr);

/// Convenience wrapper for the ablation baseline.
WalkSet generate_walks_fullwalk(const EdgeStore& store, const WalkConfig& config,
                                WalkStats* stats = nullptr);

}  // namespace timewalk
