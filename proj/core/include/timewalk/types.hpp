#pragma once

#include <cstdint>
#include <limits>

namespace timewalk {

/// External node identifier. Arbitrary non-negative 64-bit values; the edge
/// store densifies them to contiguous internal ids at build time.
using NodeId = std::int64_t;

/// Integer timestamp (milliseconds or dataset-native units). Inputs must be
/// non-negative; the sentinels below are reserved for walk bookkeeping.
using Timestamp = std::int64_t;

/// Dense node id assigned by the edge store, valid for one snapshot only.
using InternalNode = std::uint32_t;

/// Index into a snapshot's time-sorted edge array.
using EdgeIndex = std::uint32_t;

/// "Before all time" — a forward walk seeded at a node may take any edge.
inline constexpr Timestamp kTimeUnset = std::numeric_limits<Timestamp>::min();
/// "After all time" — backward-walk counterpart of kTimeUnset.
inline constexpr Timestamp kTimeInfinite = std::numeric_limits<Timestamp>::max();

/// One timestamped interaction.
struct TemporalEdge {
  NodeId source{};
  NodeId target{};
  Timestamp time{};

  friend bool operator==(const TemporalEdge&, const TemporalEdge&) = default;
};

/// How the node-conditioned view of an edge store is keyed.
/// DirectedForward serves forward walks (region = out-edges), DirectedBackward
/// serves backward walks (region = in-edges), Undirected serves both.
enum class DirectionMode : std::uint8_t {
  DirectedForward,
  DirectedBackward,
  Undirected,
};

enum class WalkDirection : std::uint8_t { Forward, Backward };

inline Timestamp start_sentinel(WalkDirection dir) {
  return dir == WalkDirection::Forward ? kTimeUnset : kTimeInfinite;
}

}  // namespace timewalk
