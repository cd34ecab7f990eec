#pragma once

#include <memory>
#include <span>

#include "timewalk/edge_store.hpp"
#include "timewalk/types.hpp"

namespace timewalk {

struct WindowConfig {
  /// Window duration, same units as edge times. Must be positive; pass
  /// kTimeInfinite for bulk (never-evicting) operation.
  Timestamp duration{};
  DirectionMode mode{DirectionMode::DirectedForward};
};

struct BatchStats {
  std::uint64_t ingested{};
  std::uint64_t dropped_late{};
  std::uint64_t evicted{};
  std::uint64_t retained{};
  double rebuild_duration{};  // seconds
  std::uint64_t peak_bytes{};
};

/// Sliding-window ingestion: per-batch merge, eviction of expired and
/// too-late edges, and bulk dual-index reconstruction. Single writer; the
/// snapshots it hands out are immutable, and the previous snapshot stays
/// alive through the next ingest so in-flight readers can finish.
class WindowManager {
 public:
  explicit WindowManager(WindowConfig config);

  /// Merge one batch (possibly unsorted), advance t_high, drop edges below
  /// the new cutoff without retraction, and rebuild the snapshot. An all-late
  /// batch is not an error: everything lands in dropped_late.
  const BatchStats& ingest_batch(std::span<const TemporalEdge> batch);

  [[nodiscard]] std::shared_ptr<const EdgeStore> snapshot() const { return store_; }

  /// [t_high - duration (clamped at 0), t_high]. Calling before the first
  /// ingest is a contract violation.
  [[nodiscard]] std::pair<Timestamp, Timestamp> window_bounds() const;

  [[nodiscard]] Timestamp t_high() const { return t_high_; }
  [[nodiscard]] std::uint64_t batch_count() const { return batch_count_; }
  [[nodiscard]] const BatchStats& last_batch_stats() const { return stats_; }

  /// Eviction cutoff implied by a hypothetical high-water mark.
  [[nodiscard]] Timestamp cutoff_for(Timestamp high) const {
    return high > config_.duration ? high - config_.duration : 0;
  }

 private:
  WindowConfig config_;
  std::shared_ptr<const EdgeStore> store_;
  std::shared_ptr<const EdgeStore> previous_;  // exactly one retired snapshot
  Timestamp t_high_{kTimeUnset};
  std::uint64_t batch_count_{};
  BatchStats stats_{};
};

}  // namespace timewalk
