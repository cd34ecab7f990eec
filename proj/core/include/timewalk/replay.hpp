#pragma once

#include <functional>
#include <span>

#include "timewalk/walk_engine.hpp"
#include "timewalk/window_manager.hpp"

namespace timewalk {

struct ReplayConfig {
  Timestamp batch_duration{};
  Timestamp window_duration{};  // must be >= batch_duration
  DirectionMode mode{DirectionMode::DirectedForward};
  WalkConfig walk{};
  TierThresholds thresholds{};
  Variant variant{Variant::Coop};
  bool generate{true};  // run walk generation after each batch

  void validate() const;
};

struct BatchRecord {
  std::uint64_t batch_index{};
  BatchStats ingest{};
  WalkStats walk{};
};

using BatchSink = std::function<void(const BatchRecord&, const WalkSet&)>;

/// Split a chronologically ordered edge stream into batch_duration spans
/// (anchored at the first edge's timestamp), ingest each through a sliding
/// window, and generate walks from each fresh snapshot. Edges that arrive
/// after their span has closed stay in the current batch; the window drops
/// them as late if they fall below the cutoff. Returns the batch count.
std::uint64_t replay_stream(std::span<const TemporalEdge> edges, const ReplayConfig& config,
                            const BatchSink& sink);

}  // namespace timewalk
