#pragma once

#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "timewalk/types.hpp"
#include "timewalk/walk_engine.hpp"

namespace timewalk {

/// Hash multimap from (source, target) to a sorted timestamp list, built
/// straight from an edge list so audits stay independent of the engine's
/// index structures. In undirected mode each edge is usable both ways.
class EdgeOracle {
 public:
  EdgeOracle() = default;
  EdgeOracle(std::span<const TemporalEdge> edges, bool undirected);

  /// Sorted timestamps of edges a -> b, or nullptr when none exist.
  [[nodiscard]] const std::vector<Timestamp>* find(NodeId a, NodeId b) const;

  [[nodiscard]] bool contains(NodeId a, NodeId b, Timestamp t) const;

 private:
  struct PairHash {
    std::size_t operator()(const std::pair<NodeId, NodeId>& p) const noexcept;
  };
  std::unordered_map<std::pair<NodeId, NodeId>, std::vector<Timestamp>, PairHash> map_;
};

/// Outcome of auditing one walk. Hop j connects entry j to entry j+1;
/// indices are zero-based.
struct WalkCheckResult {
  std::size_t hops{};
  std::size_t valid_hops{};
  bool valid{true};
  std::optional<std::size_t> first_violation;
  std::vector<bool> hop_valid;
};

/// Audit a timed walk: hop j is valid iff the traversed edge exists at
/// times[j+1] and the timestamp strictly advances in the walk direction
/// (non-strict comparison when strict=false). Entry-0 sentinels impose no
/// constraint. Backward hops traverse stored edges against their direction.
WalkCheckResult check_timed_walk(std::span<const NodeId> nodes,
                                 std::span<const Timestamp> times, const EdgeOracle& oracle,
                                 WalkDirection direction = WalkDirection::Forward,
                                 bool strict = true);

/// Audit an untimed node sequence by greedy earliest-feasible timestamp
/// assignment: each hop takes the smallest timestamp strictly greater than
/// the previous assignment. Greedy-earliest never discards a feasible
/// suffix, so failure at a hop proves the sequence infeasible.
WalkCheckResult check_untimed_walk_greedy(std::span<const NodeId> nodes,
                                          const EdgeOracle& oracle, bool strict = true);

/// Hop- and walk-level aggregation. Zero walks count as 100% valid
/// (vacuous truth).
struct ValidityReport {
  std::uint64_t total_walks{};
  std::uint64_t valid_walks{};
  std::uint64_t total_hops{};
  std::uint64_t valid_hops{};
  std::vector<std::optional<std::size_t>> first_violation_per_walk;

  [[nodiscard]] double walk_percent() const {
    return total_walks == 0 ? 100.0 : 100.0 * static_cast<double>(valid_walks) / static_cast<double>(total_walks);
  }
  [[nodiscard]] double hop_percent() const {
    return total_hops == 0 ? 100.0 : 100.0 * static_cast<double>(valid_hops) / static_cast<double>(total_hops);
  }
};

ValidityReport summarize(std::span<const WalkCheckResult> results);

/// Audit every emitted walk of a WalkSet (walks that never left their start
/// node are skipped, matching the output writers).
ValidityReport check_walkset(const WalkSet& walks, const EdgeOracle& oracle,
                             WalkDirection direction = WalkDirection::Forward,
                             bool strict = true);

}  // namespace timewalk
