#include "timewalk/validity.hpp"

#include <algorithm>

#include "timewalk/rng.hpp"

namespace timewalk {

std::size_t EdgeOracle::PairHash::operator()(const std::pair<NodeId, NodeId>& p) const noexcept {
  return static_cast<std::size_t>(
      mix64(static_cast<std::uint64_t>(p.first) ^ mix64(static_cast<std::uint64_t>(p.second))));
}

EdgeOracle::EdgeOracle(std::span<const TemporalEdge> edges, bool undirected) {
  for (const TemporalEdge& e : edges) {
    map_[{e.source, e.target}].push_back(e.time);
    if (undirected) map_[{e.target, e.source}].push_back(e.time);
  }
  for (auto& [key, times] : map_) std::sort(times.begin(), times.end());
}

const std::vector<Timestamp>* EdgeOracle::find(NodeId a, NodeId b) const {
  auto it = map_.find({a, b});
  return it == map_.end() ? nullptr : &it->second;
}

bool EdgeOracle::contains(NodeId a, NodeId b, Timestamp t) const {
  const auto* times = find(a, b);
  return times != nullptr && std::binary_search(times->begin(), times->end(), t);
}

WalkCheckResult check_timed_walk(std::span<const NodeId> nodes,
                                 std::span<const Timestamp> times, const EdgeOracle& oracle,
                                 WalkDirection direction, bool strict) {
  WalkCheckResult result;
  if (nodes.size() < 2) return result;  // zero hops, vacuously valid
  const bool forward = direction == WalkDirection::Forward;
  result.hops = nodes.size() - 1;
  result.hop_valid.resize(result.hops, false);

  for (std::size_t j = 0; j + 1 < nodes.size(); ++j) {
    const Timestamp t_prev = times[j];
    const Timestamp t_hop = times[j + 1];
    // A backward walk traverses the stored edge target -> source.
    const bool edge_ok = forward ? oracle.contains(nodes[j], nodes[j + 1], t_hop)
                                 : oracle.contains(nodes[j + 1], nodes[j], t_hop);
    bool time_ok;
    if (j == 0 && (t_prev == kTimeUnset || t_prev == kTimeInfinite)) {
      // start sentinel: the first hop is unconstrained in either direction
      // (the text format collapses both sentinels to one spelling)
      time_ok = true;
    } else if (forward) {
      time_ok = strict ? t_hop > t_prev : t_hop >= t_prev;
    } else {
      time_ok = strict ? t_hop < t_prev : t_hop <= t_prev;
    }
    if (edge_ok && time_ok) {
      result.hop_valid[j] = true;
      ++result.valid_hops;
    } else if (!result.first_violation) {
      result.first_violation = j;
    }
  }
  result.valid = result.valid_hops == result.hops;
  return result;
}

WalkCheckResult check_untimed_walk_greedy(std::span<const NodeId> nodes,
                                          const EdgeOracle& oracle, bool strict) {
  WalkCheckResult result;
  if (nodes.size() < 2) return result;
  result.hops = nodes.size() - 1;
  result.hop_valid.resize(result.hops, false);

  Timestamp assigned = kTimeUnset;
  for (std::size_t j = 0; j + 1 < nodes.size(); ++j) {
    const auto* candidates = oracle.find(nodes[j], nodes[j + 1]);
    if (candidates != nullptr) {
      auto it = strict ? std::upper_bound(candidates->begin(), candidates->end(), assigned)
                       : std::lower_bound(candidates->begin(), candidates->end(), assigned);
      if (it != candidates->end()) {
        assigned = *it;
        result.hop_valid[j] = true;
        ++result.valid_hops;
        continue;
      }
    }
    result.first_violation = j;
    break;  // no feasible assignment; later hops are unreachable
  }
  result.valid = result.valid_hops == result.hops;
  return result;
}

ValidityReport summarize(std::span<const WalkCheckResult> results) {
  ValidityReport report;
  report.total_walks = results.size();
  report.first_violation_per_walk.reserve(results.size());
  for (const WalkCheckResult& r : results) {
    report.total_hops += r.hops;
    report.valid_hops += r.valid_hops;
    if (r.valid) ++report.valid_walks;
    report.first_violation_per_walk.push_back(r.first_violation);
  }
  return report;
}

ValidityReport check_walkset(const WalkSet& walks, const EdgeOracle& oracle,
                             WalkDirection direction, bool strict) {
  std::vector<WalkCheckResult> results;
  results.reserve(walks.walk_count);
  for (std::uint64_t w = 0; w < walks.walk_count; ++w) {
    const std::uint32_t len = walks.lengths[w];
    if (len < 2) continue;
    const std::span<const NodeId> nodes{walks.nodes.data() + w * walks.stride, len};
    const std::span<const Timestamp> times{walks.times.data() + w * walks.stride, len};
    results.push_back(check_timed_walk(nodes, times, oracle, direction, strict));
  }
  return summarize(results);
}

}  // namespace timewalk
