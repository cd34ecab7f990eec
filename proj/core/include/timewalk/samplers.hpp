#pragma once

#include <algorithm>
#include <span>
#include <vector>

#include "timewalk/types.hpp"

namespace timewalk {

/// Temporal bias applied when picking among a time-ordered candidate set.
/// Index biases are closed-form inverse CDFs over ordinal position; the
/// weight bias applies inverse transform sampling on exp(t_i - t_min).
enum class BiasKind : std::uint8_t {
  UniformIndex,
  LinearIndex,
  ExponentialIndex,
  ExponentialWeight,
};

/// Second-order return/in-out parameters. beta_max is derived, never stored,
/// so it always equals max(1/p, 1, 1/q).
struct Node2VecParams {
  double p{1.0};
  double q{1.0};

  [[nodiscard]] double beta_max() const {
    return std::max({1.0 / p, 1.0, 1.0 / q});
  }
};

/// Prefix sums of exp(t_i - t_min) over a time-sorted candidate set,
/// t_min = times.front(). Non-decreasing, strictly positive total.
struct CumulativeWeights {
  std::vector<double> prefix;

  [[nodiscard]] double total() const { return prefix.back(); }
  [[nodiscard]] std::size_t size() const { return prefix.size(); }
};

/// i = floor(u * n), clamped to n-1 against rounding. Mass 1 per index.
std::size_t pick_index_uniform(double u, std::size_t n);

/// Closed-form inverse of the linear-recency CDF: mass proportional to i+1.
std::size_t pick_index_linear(double u, std::size_t n);

/// Mass proportional to e^i. Exact inverse floor(ln(1 + u*(e^n - 1))) while
/// e^n is representable; asymptotic tail form floor(n + ln u) beyond that.
std::size_t pick_index_exponential(double u, std::size_t n);

/// Largest n for which pick_index_exponential uses the exact inverse.
inline constexpr std::size_t kExponentialExactLimit = 700;

CumulativeWeights build_cumulative_weights(std::span<const Timestamp> times);

/// Smallest k with prefix[k] >= u * total, by binary search.
std::size_t pick_weighted(double u, const CumulativeWeights& cw);
std::size_t pick_weighted(double u, std::span<const double> prefix);

/// Inverse transform over a slice [begin, end) of a larger prefix-sum array.
/// `base` is the prefix mass before `begin` (0 when the slice starts the
/// array). Equivalent to pick_weighted over the slice's own weights.
std::size_t pick_weighted_range(double u, std::span<const double> prefix,
                                std::size_t begin, std::size_t end, double base);

/// Linear-scan reference picker: returns the unique k with F(k) <= u < F(k+1)
/// where F(k) = (sum of weights before k) / total. This fixes the boundary
/// convention every closed-form picker must reproduce.
std::size_t oracle_pick(double u, std::span<const double> weights);

/// One rejection-sampling acceptance test for second-order bias.
/// beta = 1/p when the candidate returns to prev, 1 when prev and candidate
/// are adjacent, 1/q otherwise; accepts iff u_accept < beta / beta_max.
template <class AdjacentFn>
bool node2vec_accept(NodeId prev, NodeId candidate, const Node2VecParams& params,
                     AdjacentFn&& adjacent, double u_accept) {
  double beta;
  if (candidate == prev) {
    beta = 1.0 / params.p;
  } else if (adjacent(prev, candidate)) {
    beta = 1.0;
  } else {
    beta = 1.0 / params.q;
  }
  return u_accept < beta / params.beta_max();
}

/// Retries per hop before the last proposal is accepted unconditionally.
inline constexpr int kNode2VecMaxRetries = 64;

}  // namespace timewalk
