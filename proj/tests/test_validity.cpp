#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>
#include <sstream>

#include "helpers.hpp"
#include "timewalk/io.hpp"
#include "timewalk/synthetic.hpp"
#include "timewalk/validity.hpp"
#include "timewalk/walk_engine.hpp"

using namespace timewalk;

namespace {

/// Exhaustive feasibility of a timestamp assignment for an untimed walk:
/// tries every combination of per-hop edge timestamps.
bool exhaustive_feasible(std::span<const NodeId> nodes, const EdgeOracle& oracle) {
  std::function<bool(std::size_t, Timestamp)> search = [&](std::size_t hop, Timestamp t) {
    if (hop + 1 >= nodes.size()) return true;
    const auto* times = oracle.find(nodes[hop], nodes[hop + 1]);
    if (times == nullptr) return false;
    for (const Timestamp candidate : *times) {
      if (candidate > t && search(hop + 1, candidate)) return true;
    }
    return false;
  };
  return search(0, kTimeUnset);
}

}  // namespace

TEST_CASE("check_timed_walk examples") {
  const std::vector<TemporalEdge> edges{{1, 2, 1}, {2, 3, 2}};
  const EdgeOracle oracle(edges, false);

  SUBCASE("single-node walk is vacuously valid") {
    const std::vector<NodeId> nodes{1};
    const std::vector<Timestamp> times{0};
    const auto r = check_timed_walk(nodes, times, oracle);
    CHECK(r.valid);
    CHECK(r.hops == 0);
  }
  SUBCASE("valid two-hop walk") {
    const std::vector<NodeId> nodes{1, 2, 3};
    const std::vector<Timestamp> times{0, 1, 2};
    const auto r = check_timed_walk(nodes, times, oracle);
    CHECK(r.valid);
    CHECK(r.valid_hops == 2);
  }
  SUBCASE("equal timestamps violate strictness") {
    const std::vector<TemporalEdge> tied{{1, 2, 1}, {2, 3, 1}};
    const EdgeOracle tied_oracle(tied, false);
    const std::vector<NodeId> nodes{1, 2, 3};
    const std::vector<Timestamp> times{0, 1, 1};
    const auto r = check_timed_walk(nodes, times, tied_oracle);
    CHECK_FALSE(r.valid);
    CHECK(r.valid_hops == 1);
    CHECK(r.first_violation == 1);  // the second hop, zero-based

    const auto relaxed = check_timed_walk(nodes, times, tied_oracle, WalkDirection::Forward, false);
    CHECK(relaxed.valid);  // non-strict mode admits ties
  }
  SUBCASE("hop over a nonexistent edge is invalid") {
    const std::vector<NodeId> nodes{1, 3};
    const std::vector<Timestamp> times{0, 2};
    CHECK_FALSE(check_timed_walk(nodes, times, oracle).valid);
  }
  SUBCASE("sentinel start imposes no constraint") {
    const std::vector<NodeId> nodes{1, 2};
    const std::vector<Timestamp> times{kTimeUnset, 1};
    CHECK(check_timed_walk(nodes, times, oracle).valid);
  }
}

TEST_CASE("backward timed walks traverse stored edges in reverse") {
  // Walking back from 2: edge (1,2,5) leads to 1 at time 5, then edge
  // (3,1,2) leads to 3 at time 2.
  const std::vector<TemporalEdge> chain{{1, 2, 5}, {3, 1, 2}};
  const EdgeOracle oracle(chain, false);
  const std::vector<NodeId> nodes{2, 1, 3};
  const std::vector<Timestamp> times{kTimeInfinite, 5, 2};
  CHECK(check_timed_walk(nodes, times, oracle, WalkDirection::Backward).valid);

  const std::vector<Timestamp> rising{kTimeInfinite, 2, 5};
  CHECK_FALSE(check_timed_walk(nodes, rising, oracle, WalkDirection::Backward).valid);
}

TEST_CASE("check_untimed_walk_greedy examples") {
  SUBCASE("greedy takes the earliest feasible assignment") {
    const std::vector<TemporalEdge> edges{{1, 2, 1}, {1, 2, 5}, {2, 3, 3}, {2, 3, 7}};
    const EdgeOracle oracle(edges, false);
    const std::vector<NodeId> nodes{1, 2, 3};
    const auto r = check_untimed_walk_greedy(nodes, oracle);
    CHECK(r.valid);  // assign 1 then 3
  }
  SUBCASE("no later timestamp available") {
    const std::vector<TemporalEdge> edges{{1, 2, 5}, {2, 3, 3}};
    const EdgeOracle oracle(edges, false);
    const std::vector<NodeId> nodes{1, 2, 3};
    const auto r = check_untimed_walk_greedy(nodes, oracle);
    CHECK_FALSE(r.valid);
    CHECK(r.first_violation == 1);  // second hop, zero-based
  }
  SUBCASE("single node is valid") {
    const EdgeOracle oracle({}, false);
    const std::vector<NodeId> nodes{4};
    CHECK(check_untimed_walk_greedy(nodes, oracle).valid);
  }
}

TEST_CASE("greedy feasibility equals exhaustive search on random instances") {
  const CounterRng rng(5);
  std::size_t feasible_seen = 0, infeasible_seen = 0;
  for (std::uint64_t trial = 0; trial < 3000; ++trial) {
    std::vector<TemporalEdge> edges;
    const std::size_t edge_count = 1 + rng.bits(trial, 0, 0) % 12;
    for (std::size_t i = 0; i < edge_count; ++i) {
      edges.push_back({static_cast<NodeId>(rng.bits(trial, i, 1) % 4),
                       static_cast<NodeId>(rng.bits(trial, i, 2) % 4),
                       static_cast<Timestamp>(rng.bits(trial, i, 3) % 6)});
    }
    const EdgeOracle oracle(edges, false);
    std::vector<NodeId> nodes;
    const std::size_t walk_len = 2 + rng.bits(trial, 20, 0) % 4;
    for (std::size_t i = 0; i < walk_len; ++i) {
      nodes.push_back(static_cast<NodeId>(rng.bits(trial, 21 + i, 0) % 4));
    }
    const bool greedy = check_untimed_walk_greedy(nodes, oracle).valid;
    const bool exhaustive = exhaustive_feasible(nodes, oracle);
    REQUIRE(greedy == exhaustive);
    (greedy ? feasible_seen : infeasible_seen) += 1;
  }
  CHECK(feasible_seen > 0);  // the sweep exercised both outcomes
  CHECK(infeasible_seen > 0);
}

TEST_CASE("summarize aggregates hop and walk percentages") {
  SUBCASE("all valid") {
    std::vector<WalkCheckResult> results(3);
    for (auto& r : results) {
      r.hops = 4;
      r.valid_hops = 4;
      r.valid = true;
    }
    const auto report = summarize(results);
    CHECK(report.walk_percent() == 100.0);
    CHECK(report.hop_percent() == 100.0);
  }
  SUBCASE("static-engine pattern: some hops valid, zero walks valid") {
    std::vector<WalkCheckResult> results(10);
    for (auto& r : results) {
      r.hops = 80;
      r.valid_hops = 1;
      r.valid = false;
      r.first_violation = 0;
    }
    const auto report = summarize(results);
    CHECK(report.walk_percent() == 0.0);
    CHECK(report.hop_percent() == doctest::Approx(1.25));
    CHECK(report.first_violation_per_walk.size() == 10);
  }
  SUBCASE("empty input is vacuously 100%") {
    const auto report = summarize({});
    CHECK(report.total_walks == 0);
    CHECK(report.walk_percent() == 100.0);
    CHECK(report.hop_percent() == 100.0);
  }
}

TEST_CASE("undirected oracles accept either orientation") {
  const std::vector<TemporalEdge> edges{{1, 2, 3}};
  const EdgeOracle directed(edges, false);
  const EdgeOracle undirected(edges, true);
  CHECK_FALSE(directed.contains(2, 1, 3));
  CHECK(undirected.contains(2, 1, 3));
  CHECK(undirected.contains(1, 2, 3));
}

TEST_CASE("engine output audits clean end to end") {
  const auto graph = make_uniform_graph(60, 4000, 500, 15);
  const auto store = EdgeStore::build(graph, DirectionMode::DirectedForward);
  WalkConfig config;
  config.walk_length = 16;
  config.walks_per_node = 4;
  const auto walks = generate_walks(store, config);
  const EdgeOracle oracle(graph, false);
  const auto report = check_walkset(walks, oracle);
  CHECK(report.hop_percent() == 100.0);
  CHECK(report.walk_percent() == 100.0);
}

TEST_CASE("backward walks survive the text round trip") {
  // The text format prints both start sentinels as `node@-`; reading them
  // back must not flip a backward walk's first hop invalid.
  const auto graph = make_uniform_graph(40, 2000, 300, 77);
  const auto store = EdgeStore::build(graph, DirectionMode::DirectedBackward);
  WalkConfig config;
  config.direction = WalkDirection::Backward;
  config.walk_length = 8;
  const auto walks = generate_walks(store, config);

  std::ostringstream text;
  write_walks_text(text, walks);
  std::istringstream in(text.str());
  const auto records = read_walks_text(in);
  REQUIRE(!records.empty());

  const EdgeOracle oracle(graph, false);
  std::vector<WalkCheckResult> results;
  for (const auto& record : records) {
    results.push_back(
        check_timed_walk(record.nodes, record.times, oracle, WalkDirection::Backward));
  }
  const auto report = summarize(results);
  CHECK(report.walk_percent() == 100.0);
  CHECK(report.hop_percent() == 100.0);
}
