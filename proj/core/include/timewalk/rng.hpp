#pragma once

#include <cstdint>

namespace timewalk {

/// splitmix64 finalizer. Full 64-bit avalanche.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Counter-based generator. Every draw is a pure function of
/// (seed, walk, hop, ordinal), so the value a walk sees at a given hop does
/// not depend on scheduling order, thread count, or execution variant.
///
/// Ordinal assignment: 0 is the primary pick (or start group pick), 1 the
/// within-group pick at walk start; rejection retries use 2r for the proposal
/// and 2r+1 for the acceptance draw of retry r.
class CounterRng {
 public:
  CounterRng() = default;
  explicit CounterRng(std::uint64_t seed) : state_(mix64(seed ^ 0x6a09e667f3bcc909ULL)) {}

  [[nodiscard]] std::uint64_t bits(std::uint64_t walk, std::uint64_t hop,
                                   std::uint64_t ordinal) const noexcept {
    std::uint64_t h = mix64(state_ ^ walk);
    h = mix64(h ^ hop);
    h = mix64(h ^ ordinal);
    return h;
  }

  /// Uniform double in [0, 1), 53 random bits.
  [[nodiscard]] double uniform(std::uint64_t walk, std::uint64_t hop,
                               std::uint64_t ordinal) const noexcept {
    return static_cast<double>(bits(walk, hop, ordinal) >> 11) * 0x1.0p-53;
  }

 private:
  std::uint64_t state_{mix64(0x6a09e667f3bcc909ULL)};
};

}  // namespace timewalk
