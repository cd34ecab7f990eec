#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace timewalk::primitives {

/// Exclusive prefix sum of `in` into `out` (same length). Returns the total.
std::uint64_t exclusive_scan(std::span<const std::uint64_t> in, std::span<std::uint64_t> out);

/// Stable LSD radix sort of (key, value) pairs by key, 16-bit digits.
/// Digit passes whose key bits are constant across the input are skipped.
void radix_sort_pairs(std::vector<std::uint64_t>& keys, std::vector<std::uint32_t>& values);

/// One maximal run of equal keys in a sorted sequence.
struct KeyRun {
  std::uint64_t key{};
  std::uint32_t start{};
  std::uint32_t length{};
};

/// Run-length encode a sorted key sequence.
std::vector<KeyRun> run_length_encode(std::span<const std::uint64_t> sorted_keys);

/// Stable compaction: append to `out` the elements of `items` whose flag is
/// nonzero. Returns the number kept.
std::size_t partition_flagged(std::span<const std::uint32_t> items,
                              std::span<const std::uint8_t> flags,
                              std::vector<std::uint32_t>& out);

}  // namespace timewalk::primitives
