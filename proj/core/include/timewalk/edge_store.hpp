#pragma once

#include <memory>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "timewalk/types.hpp"

namespace timewalk {

/// Half-open range into the node-grouped edge reference array, plus the
/// number of distinct-timestamp groups the range spans.
struct NeighborRange {
  std::size_t start{};
  std::size_t end{};
  std::size_t group_count{};

  [[nodiscard]] bool empty() const { return start == end; }
  [[nodiscard]] std::size_t size() const { return end - start; }
};

/// Transient buffer sizes observed while building a snapshot; feeds the
/// window manager's peak-memory accounting.
struct BuildTelemetry {
  std::size_t scratch_bytes{};
};

/// One distinct-timestamp group inside a node's region: its timestamp and
/// the absolute start position in the reference array. Kept interleaved so
/// the per-hop search touches one cache stream.
struct TsGroupMark {
  Timestamp time{};
  std::uint32_t start{};
};

/// Immutable dual-index snapshot: one shared time-sorted edge array with a
/// timestamp-grouped view (global offsets) and a node-and-timestamp-grouped
/// view (per-node reference permutation with per-node timestamp sub-groups).
/// Neither view replicates edge data. Safe for unrestricted concurrent reads
/// once built.
class EdgeStore {
 public:
  EdgeStore() = default;

  /// One sort per view plus linear passes. Equal-timestamp edges are ordered
  /// by (time, source, target), so identical edge multisets produce identical
  /// offset arrays regardless of input permutation. Empty input yields a
  /// valid empty store.
  static EdgeStore build(std::span<const TemporalEdge> edges, DirectionMode mode,
                         BuildTelemetry* telemetry = nullptr);

  [[nodiscard]] std::size_t edge_count() const { return time_.size(); }
  [[nodiscard]] std::size_t node_count() const { return internal_to_external_.size(); }
  [[nodiscard]] std::size_t ts_group_count() const { return ts_group_time_.size(); }
  [[nodiscard]] bool empty() const { return time_.empty(); }
  [[nodiscard]] DirectionMode direction_mode() const { return mode_; }
  [[nodiscard]] bool supports(WalkDirection dir) const {
    if (mode_ == DirectionMode::Undirected) return true;
    return (mode_ == DirectionMode::DirectedForward) == (dir == WalkDirection::Forward);
  }

  // --- timestamp-grouped view -------------------------------------------

  /// Half-open slice of the time-sorted edge array covered by one group.
  /// Out-of-range group_index is a contract violation.
  [[nodiscard]] std::pair<std::size_t, std::size_t> edge_slice_for_ts_group(
      std::size_t group_index) const;

  [[nodiscard]] Timestamp ts_group_time(std::size_t group_index) const {
    return ts_group_time_[group_index];
  }

  /// Cumulative exp-recency weights per timestamp group (start-edge bias).
  [[nodiscard]] std::span<const double> ts_group_weight_prefix() const {
    return ts_group_weight_prefix_;
  }

  /// Edge at a time-sorted position, external ids.
  [[nodiscard]] TemporalEdge edge_at(std::size_t pos) const {
    return {internal_to_external_[endpoints_[pos].src], internal_to_external_[endpoints_[pos].dst],
            time_[pos]};
  }

  [[nodiscard]] InternalNode edge_source_internal(std::size_t pos) const {
    return endpoints_[pos].src;
  }
  [[nodiscard]] InternalNode edge_target_internal(std::size_t pos) const {
    return endpoints_[pos].dst;
  }
  [[nodiscard]] Timestamp edge_time(std::size_t pos) const { return time_[pos]; }

  [[nodiscard]] std::span<const Timestamp> edge_times() const { return time_; }

  // --- node ids -----------------------------------------------------------

  [[nodiscard]] std::optional<InternalNode> find_node(NodeId external) const;
  [[nodiscard]] NodeId external_id(InternalNode v) const { return internal_to_external_[v]; }

  // --- node-and-timestamp-grouped view ------------------------------------

  /// Causality-preserving neighborhood: the edges at v with time strictly
  /// greater than t (forward) or strictly less (backward). Unknown nodes and
  /// exhausted times yield empty ranges. O(log G) in the node's group count.
  [[nodiscard]] NeighborRange temporal_neighborhood(NodeId v, Timestamp t,
                                                    WalkDirection dir) const;
  [[nodiscard]] NeighborRange temporal_neighborhood_internal(InternalNode v, Timestamp t,
                                                             WalkDirection dir) const;

  /// Number of distinct timestamps among v's node-grouped edges; 0 for
  /// unknown nodes.
  [[nodiscard]] std::size_t timestamp_group_count(NodeId v) const;
  [[nodiscard]] std::size_t timestamp_group_count_internal(InternalNode v) const {
    return node_ts_index_[v + 1] - node_ts_index_[v];
  }

  [[nodiscard]] std::pair<std::size_t, std::size_t> node_region(InternalNode v) const {
    return {node_group_offsets_[v], node_group_offsets_[v + 1]};
  }

  /// Timestamp-group marks of v's region, time-ascending.
  [[nodiscard]] std::span<const TsGroupMark> group_marks(InternalNode v) const {
    return {node_ts_groups_.data() + node_ts_index_[v],
            node_ts_index_[v + 1] - node_ts_index_[v]};
  }

  /// Resolve one node-view position.
  [[nodiscard]] EdgeIndex ref_edge(std::size_t pos) const { return node_ref_edge_[pos]; }
  [[nodiscard]] Timestamp ref_time(std::size_t pos) const { return time_[node_ref_edge_[pos]]; }

  /// Endpoint reached by traversing the referenced edge out of `owner`.
  [[nodiscard]] InternalNode ref_neighbor(std::size_t pos, InternalNode owner) const {
    const Endpoints& e = endpoints_[node_ref_edge_[pos]];
    switch (mode_) {
      case DirectionMode::DirectedForward: return e.dst;
      case DirectionMode::DirectedBackward: return e.src;
      default: return e.src == owner ? e.dst : e.src;
    }
  }

  /// Per-node cumulative exp-recency weights aligned with the reference
  /// array, each node's run anchored at its region's latest timestamp so
  /// weights stay <= 1 under arbitrary time spans.
  [[nodiscard]] std::span<const double> weight_prefix() const { return node_weight_prefix_; }

  // --- adjacency (second-order bias support) -------------------------------

  /// Any stored edge from a to b in traversal orientation (either endpoint
  /// order in undirected mode). O(log deg).
  [[nodiscard]] bool adjacent(InternalNode a, InternalNode b) const;

  /// Restricted variant: an edge from a to b strictly beyond t in the walk
  /// direction.
  [[nodiscard]] bool adjacent_after(InternalNode a, InternalNode b, Timestamp t,
                                    WalkDirection dir) const;

  // --- maintenance ----------------------------------------------------------

  /// Time-sorted edges with external ids, restricted to time >= cutoff.
  /// Eviction of an expired prefix reduces to this single suffix copy.
  [[nodiscard]] std::vector<TemporalEdge> export_suffix(Timestamp cutoff) const;
  [[nodiscard]] std::vector<TemporalEdge> export_edges() const { return export_suffix(kTimeUnset); }

  /// Bytes held by the snapshot's arrays (capacity accounting).
  [[nodiscard]] std::size_t memory_bytes() const;

 private:
  struct Endpoints {
    InternalNode src{};
    InternalNode dst{};
  };

  DirectionMode mode_{DirectionMode::DirectedForward};

  // Shared edge store, globally time-sorted. Internal dense node ids.
  std::vector<Endpoints> endpoints_;
  std::vector<Timestamp> time_;

  // Timestamp-grouped view.
  std::vector<std::size_t> ts_group_offsets_;  // group starts + terminating edge_count
  std::vector<Timestamp> ts_group_time_;
  std::vector<double> ts_group_weight_prefix_;

  // Node-and-timestamp-grouped view: reference permutation plus two-level
  // offsets. Entries within a node are time-sorted.
  std::vector<std::uint32_t> node_ref_edge_;
  std::vector<std::size_t> node_group_offsets_;  // node_count + 1
  std::vector<std::size_t> node_ts_index_;       // node_count + 1, into node_ts_groups_
  std::vector<TsGroupMark> node_ts_groups_;
  std::vector<double> node_weight_prefix_;

  // Sorted unique traversal neighbors per node.
  std::vector<std::size_t> node_adj_offsets_;
  std::vector<InternalNode> node_adj_;

  // External id mapping.
  std::vector<NodeId> internal_to_external_;
  std::unordered_map<NodeId, InternalNode> external_to_internal_;
};

}  // namespace timewalk
