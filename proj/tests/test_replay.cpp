#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <sstream>

#include "helpers.hpp"
#include "timewalk/io.hpp"
#include "timewalk/replay.hpp"
#include "timewalk/synthetic.hpp"

using namespace timewalk;

namespace {

std::vector<TemporalEdge> sorted_stream(std::uint64_t nodes, std::uint64_t edges, Timestamp span,
                                        std::uint64_t seed) {
  auto out = make_uniform_graph(nodes, edges, span, seed);
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.time < b.time; });
  return out;
}

}  // namespace

TEST_CASE("replay splits the stream into batch-duration spans") {
  const auto stream = sorted_stream(50, 5000, 999, 2);
  ReplayConfig config;
  config.batch_duration = 100;
  config.window_duration = 300;
  config.generate = false;
  std::uint64_t records = 0;
  std::uint64_t ingested_total = 0;
  const auto batches = replay_stream(stream, config, [&](const BatchRecord& r, const WalkSet&) {
    ++records;
    ingested_total += r.ingest.ingested;
  });
  CHECK(batches == 10);
  CHECK(records == 10);
  CHECK(ingested_total == stream.size());
}

TEST_CASE("empty stream replays zero batches") {
  ReplayConfig config;
  config.batch_duration = 10;
  config.window_duration = 10;
  CHECK(replay_stream({}, config, nullptr) == 0);
}

TEST_CASE("batch duration spanning the whole input gives a single batch") {
  const auto stream = sorted_stream(20, 500, 99, 3);
  ReplayConfig config;
  config.batch_duration = 1000;
  config.window_duration = 1000;
  config.generate = false;
  std::uint64_t records = 0;
  replay_stream(stream, config, [&](const BatchRecord&, const WalkSet&) { ++records; });
  CHECK(records == 1);
}

TEST_CASE("single-batch replay equals bulk mode byte for byte") {
  const auto stream = sorted_stream(40, 3000, 500, 7);

  // bulk: one window manager ingest + walk generation
  WindowManager bulk({1000, DirectionMode::DirectedForward});
  bulk.ingest_batch(stream);
  WalkConfig walk_config;
  walk_config.walk_length = 10;
  walk_config.seed = 11;
  const auto bulk_walks = generate_walks(*bulk.snapshot(), walk_config);
  std::ostringstream bulk_text;
  write_walks_text(bulk_text, bulk_walks);

  ReplayConfig config;
  config.batch_duration = 1000;
  config.window_duration = 1000;
  config.walk = walk_config;
  std::ostringstream replay_text;
  replay_stream(stream, config, [&](const BatchRecord&, const WalkSet& walks) {
    write_walks_text(replay_text, walks);
  });
  CHECK(replay_text.str() == bulk_text.str());
}

TEST_CASE("replay validates its configuration") {
  ReplayConfig config;
  config.batch_duration = 0;
  CHECK_THROWS_AS(replay_stream({}, config, nullptr), std::invalid_argument);
  config.batch_duration = 100;
  config.window_duration = 50;  // narrower than a batch
  CHECK_THROWS_AS(replay_stream({}, config, nullptr), std::invalid_argument);
}

TEST_CASE("constant-rate stream keeps retained counts and peak bytes flat") {
  const auto stream = sorted_stream(100, 20000, 1999, 13);
  ReplayConfig config;
  config.batch_duration = 100;
  config.window_duration = 300;
  config.generate = false;
  std::vector<BatchStats> stats;
  replay_stream(stream, config, [&](const BatchRecord& r, const WalkSet&) {
    stats.push_back(r.ingest);
  });
  REQUIRE(stats.size() == 20);
  const auto reference = stats[5];
  for (std::size_t i = 6; i < stats.size(); ++i) {
    const double ratio = static_cast<double>(stats[i].peak_bytes) /
                         static_cast<double>(reference.peak_bytes);
    CHECK(ratio > 0.7);
    CHECK(ratio < 1.3);
  }
}

TEST_CASE("walks generated per batch respect the live window") {
  const auto stream = sorted_stream(30, 4000, 799, 17);
  ReplayConfig config;
  config.batch_duration = 100;
  config.window_duration = 200;
  config.walk.walk_length = 8;
  std::uint64_t audited = 0;
  replay_stream(stream, config, [&](const BatchRecord& r, const WalkSet& walks) {
    // every recorded hop must fall inside the window the batch left behind
    for (std::uint64_t w = 0; w < walks.walk_count; ++w) {
      for (std::uint32_t j = 1; j < walks.lengths[w]; ++j) {
        CHECK(walks.time_at(w, j) >= 0);
        ++audited;
      }
    }
    CHECK(r.ingest.retained > 0);
  });
  CHECK(audited > 0);
}

TEST_CASE("out-of-order edges are dropped as late, never an error") {
  // mostly ascending stream with one straggler far in the past
  std::vector<TemporalEdge> stream;
  for (Timestamp t = 0; t < 1000; t += 2) stream.push_back({1, 2, t});
  stream.insert(stream.begin() + 400, {3, 4, 5});  // arrives in batch ~8
  ReplayConfig config;
  config.batch_duration = 100;
  config.window_duration = 100;
  config.generate = false;
  std::uint64_t dropped = 0;
  replay_stream(stream, config, [&](const BatchRecord& r, const WalkSet&) {
    dropped += r.ingest.dropped_late;
  });
  CHECK(dropped == 1);
}
