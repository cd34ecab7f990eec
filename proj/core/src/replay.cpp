#include "timewalk/replay.hpp"

#include <stdexcept>

namespace timewalk {

void ReplayConfig::validate() const {
  if (batch_duration <= 0) throw std::invalid_argument("replay: batch_duration must be positive");
  if (window_duration < batch_duration) {
    throw std::invalid_argument("replay: window_duration must be >= batch_duration");
  }
  walk.validate();
  thresholds.validate();
}

std::uint64_t replay_stream(std::span<const TemporalEdge> edges, const ReplayConfig& config,
                            const BatchSink& sink) {
  config.validate();
  if (edges.empty()) return 0;

  WindowManager window({config.window_duration, config.mode});
  std::uint64_t batch_index = 0;

  const Timestamp origin = edges.front().time;
  Timestamp boundary = origin + config.batch_duration;
  std::vector<TemporalEdge> batch;

  auto flush = [&] {
    if (batch.empty()) return;
    BatchRecord record;
    record.batch_index = batch_index++;
    record.ingest = window.ingest_batch(batch);
    WalkSet walks;
    if (config.generate && !window.snapshot()->empty()) {
      walks = generate_walks(*window.snapshot(), config.walk, config.thresholds, config.variant,
                             &record.walk);
    }
    if (sink) sink(record, walks);
    batch.clear();
  };

  for (const TemporalEdge& e : edges) {
    if (e.time >= boundary) {
      flush();
      // jump the boundary past any stream gap
      const Timestamp spans = (e.time - origin) / config.batch_duration + 1;
      boundary = origin + spans * config.batch_duration;
    }
    batch.push_back(e);
  }
  flush();
  return batch_index;
}

}  // namespace timewalk
