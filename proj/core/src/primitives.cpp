#include "timewalk/primitives.hpp"

#include <array>
#include <cstring>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace timewalk::primitives {

namespace {

constexpr int kDigitBits = 16;
constexpr std::size_t kBuckets = std::size_t{1} << kDigitBits;
constexpr std::size_t kParallelCutoff = 1u << 16;

inline std::uint32_t digit_of(std::uint64_t key, int pass) {
  return static_cast<std::uint32_t>((key >> (pass * kDigitBits)) & (kBuckets - 1));
}

// One stable scatter pass over a 16-bit digit. Blocked histogram + rank so
// threads write disjoint, order-preserving slices.
void radix_pass(int pass, const std::uint64_t* keys_in, const std::uint32_t* vals_in,
                std::uint64_t* keys_out, std::uint32_t* vals_out, std::size_t n,
                bool* skipped) {
  int threads = 1;
#ifdef _OPENMP
  if (n >= kParallelCutoff) threads = omp_get_max_threads();
#endif
  std::vector<std::uint64_t> hist(static_cast<std::size_t>(threads) * kBuckets, 0);

#pragma omp parallel num_threads(threads) if (threads > 1)
  {
#ifdef _OPENMP
    const int tid = omp_get_thread_num();
#else
    const int tid = 0;
#endif
    const std::size_t chunk = (n + threads - 1) / threads;
    const std::size_t lo = std::min(n, chunk * tid);
    const std::size_t hi = std::min(n, lo + chunk);
    std::uint64_t* h = hist.data() + static_cast<std::size_t>(tid) * kBuckets;
    for (std::size_t i = lo; i < hi; ++i) ++h[digit_of(keys_in[i], pass)];
  }

  // Skip the pass when every key shares the digit.
  for (std::size_t b = 0; b < kBuckets; ++b) {
    std::uint64_t total = 0;
    for (int t = 0; t < threads; ++t) total += hist[t * kBuckets + b];
    if (total == n) {
      *skipped = true;
      return;
    }
    if (total != 0) break;
  }
  *skipped = false;

  // Column-major exclusive scan over (bucket, thread) gives each thread its
  // stable write base per bucket.
  std::uint64_t running = 0;
  for (std::size_t b = 0; b < kBuckets; ++b) {
    for (int t = 0; t < threads; ++t) {
      std::uint64_t& cell = hist[static_cast<std::size_t>(t) * kBuckets + b];
      const std::uint64_t count = cell;
      cell = running;
      running += count;
    }
  }

#pragma omp parallel num_threads(threads) if (threads > 1)
  {
#ifdef _OPENMP
    const int tid = omp_get_thread_num();
#else
    const int tid = 0;
#endif
    const std::size_t chunk = (n + threads - 1) / threads;
    const std::size_t lo = std::min(n, chunk * tid);
    const std::size_t hi = std::min(n, lo + chunk);
    std::uint64_t* offsets = hist.data() + static_cast<std::size_t>(tid) * kBuckets;
    for (std::size_t i = lo; i < hi; ++i) {
      const std::size_t dst = offsets[digit_of(keys_in[i], pass)]++;
      keys_out[dst] = keys_in[i];
      vals_out[dst] = vals_in[i];
    }
  }
}

}  // namespace

std::uint64_t exclusive_scan(std::span<const std::uint64_t> in, std::span<std::uint64_t> out) {
  std::uint64_t acc = 0;
  for (std::size_t i = 0; i < in.size(); ++i) {
    out[i] = acc;
    acc += in[i];
  }
  return acc;
}

void radix_sort_pairs(std::vector<std::uint64_t>& keys, std::vector<std::uint32_t>& values) {
  const std::size_t n = keys.size();
  if (n < 2) return;
  std::vector<std::uint64_t> key_buf(n);
  std::vector<std::uint32_t> val_buf(n);

  std::uint64_t* kin = keys.data();
  std::uint64_t* kout = key_buf.data();
  std::uint32_t* vin = values.data();
  std::uint32_t* vout = val_buf.data();

  for (int pass = 0; pass < 64 / kDigitBits; ++pass) {
    bool skipped = false;
    radix_pass(pass, kin, vin, kout, vout, n, &skipped);
    if (!skipped) {
      std::swap(kin, kout);
      std::swap(vin, vout);
    }
  }
  if (kin != keys.data()) {
    std::memcpy(keys.data(), kin, n * sizeof(std::uint64_t));
    std::memcpy(values.data(), vin, n * sizeof(std::uint32_t));
  }
}

std::vector<KeyRun> run_length_encode(std::span<const std::uint64_t> sorted_keys) {
  std::vector<KeyRun> runs;
  const std::size_t n = sorted_keys.size();
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i + 1;
    while (j < n && sorted_keys[j] == sorted_keys[i]) ++j;
    runs.push_back({sorted_keys[i], static_cast<std::uint32_t>(i),
                    static_cast<std::uint32_t>(j - i)});
    i = j;
  }
  return runs;
}

std::size_t partition_flagged(std::span<const std::uint32_t> items,
                              std::span<const std::uint8_t> flags,
                              std::vector<std::uint32_t>& out) {
  out.clear();
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (flags[items[i]]) out.push_back(items[i]);
  }
  return out.size();
}

}  // namespace timewalk::primitives
