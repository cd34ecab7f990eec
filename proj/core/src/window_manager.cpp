#include "timewalk/window_manager.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>

namespace timewalk {

WindowManager::WindowManager(WindowConfig config) : config_(config) {
  if (config_.duration <= 0) throw std::invalid_argument("window duration must be positive");
  store_ = std::make_shared<EdgeStore>();
}

const BatchStats& WindowManager::ingest_batch(std::span<const TemporalEdge> batch) {
  using clock = std::chrono::steady_clock;
  const auto started = clock::now();

  BatchStats stats;
  stats.ingested = batch.size();

  if (batch.empty()) {
    // State unchanged apart from the batch counter.
    stats.retained = store_->edge_count();
    stats.peak_bytes = store_->memory_bytes();
    stats_ = stats;
    ++batch_count_;
    return stats_;
  }

  Timestamp batch_high = kTimeUnset;
  for (const TemporalEdge& e : batch) batch_high = std::max(batch_high, e.time);
  const Timestamp new_high = std::max(t_high_, batch_high);
  const Timestamp cutoff = cutoff_for(new_high);

  // Survivors of the previous window: a suffix of the time-sorted store.
  std::vector<TemporalEdge> merged = store_->export_suffix(cutoff);
  stats.evicted = store_->edge_count() - merged.size();

  merged.reserve(merged.size() + batch.size());
  for (const TemporalEdge& e : batch) {
    if (e.time >= cutoff) {
      merged.push_back(e);
    } else {
      ++stats.dropped_late;  // too late; dropped without retraction
    }
  }

  BuildTelemetry telemetry;
  auto rebuilt = std::make_shared<EdgeStore>(EdgeStore::build(merged, config_.mode, &telemetry));

  stats.retained = rebuilt->edge_count();
  stats.peak_bytes = store_->memory_bytes() + merged.capacity() * sizeof(TemporalEdge) +
                     rebuilt->memory_bytes() + telemetry.scratch_bytes;
  stats.rebuild_duration = std::chrono::duration<double>(clock::now() - started).count();

  previous_ = std::move(store_);
  store_ = std::move(rebuilt);
  t_high_ = new_high;
  stats_ = stats;
  ++batch_count_;
  return stats_;
}

std::pair<Timestamp, Timestamp> WindowManager::window_bounds() const {
  if (batch_count_ == 0 || t_high_ == kTimeUnset) {
    throw std::logic_error("window_bounds: no batch ingested yet");
  }
  return {cutoff_for(t_high_), t_high_};
}

}  // namespace timewalk
