#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <span>
#include <vector>

#include "timewalk/edge_store.hpp"
#include "timewalk/rng.hpp"
#include "timewalk/types.hpp"

namespace timewalk::testing {

/// Brute-force causality-preserving neighborhood over a raw edge list:
/// the reference every index lookup must reproduce.
inline std::multiset<std::tuple<NodeId, NodeId, Timestamp>> brute_force_neighborhood(
    std::span<const TemporalEdge> edges, NodeId v, Timestamp t, WalkDirection dir,
    DirectionMode mode) {
  std::multiset<std::tuple<NodeId, NodeId, Timestamp>> out;
  for (const TemporalEdge& e : edges) {
    const bool time_ok = dir == WalkDirection::Forward ? e.time > t : e.time < t;
    if (!time_ok) continue;
    if (mode == DirectionMode::DirectedForward) {
      if (e.source == v) out.insert({e.source, e.target, e.time});
    } else if (mode == DirectionMode::DirectedBackward) {
      if (e.target == v) out.insert({e.source, e.target, e.time});
    } else {
      // one candidate entry per endpoint: a self-loop at v appears twice
      if (e.source == v) out.insert({e.source, e.target, e.time});
      if (e.target == v) out.insert({e.source, e.target, e.time});
    }
  }
  return out;
}

/// Materialize the store's answer in the same normal form.
inline std::multiset<std::tuple<NodeId, NodeId, Timestamp>> range_edges(
    const EdgeStore& store, NeighborRange range) {
  std::multiset<std::tuple<NodeId, NodeId, Timestamp>> out;
  for (std::size_t pos = range.start; pos < range.end; ++pos) {
    const TemporalEdge e = store.edge_at(store.ref_edge(pos));
    out.insert({e.source, e.target, e.time});
  }
  return out;
}

/// Total-variation distance between an empirical count vector and a
/// probability vector.
inline double total_variation(std::span<const std::uint64_t> counts,
                              std::span<const double> probabilities) {
  std::uint64_t n = 0;
  for (auto c : counts) n += c;
  double tv = 0.0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    tv += std::abs(static_cast<double>(counts[i]) / static_cast<double>(n) - probabilities[i]);
  }
  return 0.5 * tv;
}

/// Upper regularized incomplete gamma Q(a, x), series + continued fraction.
inline double gamma_q(double a, double x) {
  if (x < 0.0 || a <= 0.0) return 1.0;
  if (x == 0.0) return 1.0;
  if (x < a + 1.0) {
    // lower series
    double sum = 1.0 / a;
    double term = sum;
    for (int i = 1; i < 500; ++i) {
      term *= x / (a + i);
      sum += term;
      if (std::abs(term) < std::abs(sum) * 1e-15) break;
    }
    const double p = sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
    return 1.0 - p;
  }
  // continued fraction for Q
  double b = x + 1.0 - a;
  double c = 1e300;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 500; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < 1e-300) d = 1e-300;
    c = b + an / c;
    if (std::abs(c) < 1e-300) c = 1e-300;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < 1e-15) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

/// Chi-square goodness-of-fit p-value.
inline double chi_square_p_value(std::span<const std::uint64_t> observed,
                                 std::span<const double> expected) {
  double chi2 = 0.0;
  std::size_t dof = 0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    if (expected[i] <= 0.0) continue;
    const double diff = static_cast<double>(observed[i]) - expected[i];
    chi2 += diff * diff / expected[i];
    ++dof;
  }
  if (dof <= 1) return 1.0;
  return gamma_q(static_cast<double>(dof - 1) / 2.0, chi2 / 2.0);
}

/// Deterministic uniform double in [0, 1) for test sweeps.
inline double test_uniform(std::uint64_t seed, std::uint64_t i, std::uint64_t stream = 0) {
  return static_cast<double>(CounterRng(seed).bits(i, stream, 0) >> 11) * 0x1.0p-53;
}

}  // namespace timewalk::testing
