#include "timewalk/samplers.hpp"

#include <cmath>
#include <stdexcept>

namespace timewalk {

namespace {

void require_picker_args(double u, std::size_t n) {
  if (n == 0) throw std::invalid_argument("picker: empty candidate set");
  if (!(u >= 0.0) || u >= 1.0) throw std::invalid_argument("picker: u outside [0,1)");
}

}  // namespace

std::size_t pick_index_uniform(double u, std::size_t n) {
  require_picker_args(u, n);
  auto i = static_cast<std::size_t>(u * static_cast<double>(n));
  return i >= n ? n - 1 : i;
}

std::size_t pick_index_linear(double u, std::size_t n) {
  require_picker_args(u, n);
  const double nn = static_cast<double>(n);
  const double total = 0.5 * nn * (nn + 1.0);
  const double r = u * total;

  double x = 0.5 * (-1.0 + std::sqrt(1.0 + 4.0 * u * nn * (nn + 1.0)));
  auto i = static_cast<std::int64_t>(x);
  if (i < 0) i = 0;
  if (i >= static_cast<std::int64_t>(n)) i = static_cast<std::int64_t>(n) - 1;

  // Cumulative mass k(k+1)/2 is an exact integer in double for every n the
  // closed form serves, so nudging against it reproduces the oracle exactly.
  auto cum = [](std::int64_t k) { return 0.5 * static_cast<double>(k) * static_cast<double>(k + 1); };
  while (i > 0 && cum(i) > r) --i;
  while (i + 1 < static_cast<std::int64_t>(n) && cum(i + 1) <= r) ++i;
  return static_cast<std::size_t>(i);
}

std::size_t pick_index_exponential(double u, std::size_t n) {
  require_picker_args(u, n);
  if (n == 1) return 0;

  double x;
  if (n <= kExponentialExactLimit) {
    x = std::log1p(u * std::expm1(static_cast<double>(n)));
  } else {
    x = static_cast<double>(n) + std::log(u);  // u == 0 gives -inf, clamped below
  }
  if (!(x > 0.0)) return 0;
  auto i = static_cast<std::size_t>(x);
  return i >= n ? n - 1 : i;
}

CumulativeWeights build_cumulative_weights(std::span<const Timestamp> times) {
  if (times.empty()) throw std::invalid_argument("build_cumulative_weights: empty input");
  const Timestamp t_min = times.front();
  CumulativeWeights cw;
  cw.prefix.resize(times.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < times.size(); ++i) {
    acc += std::exp(static_cast<double>(times[i] - t_min));
    cw.prefix[i] = acc;
  }
  return cw;
}

std::size_t pick_weighted(double u, const CumulativeWeights& cw) {
  return pick_weighted(u, std::span<const double>(cw.prefix));
}

std::size_t pick_weighted(double u, std::span<const double> prefix) {
  if (prefix.empty()) throw std::invalid_argument("pick_weighted: empty prefix array");
  const double r = u * prefix.back();
  auto it = std::lower_bound(prefix.begin(), prefix.end(), r);
  if (it == prefix.end()) --it;
  return static_cast<std::size_t>(it - prefix.begin());
}

std::size_t pick_weighted_range(double u, std::span<const double> prefix,
                                std::size_t begin, std::size_t end, double base) {
  const double r = base + u * (prefix[end - 1] - base);
  auto first = prefix.begin() + static_cast<std::ptrdiff_t>(begin);
  auto last = prefix.begin() + static_cast<std::ptrdiff_t>(end);
  auto it = std::lower_bound(first, last, r);
  if (it == last) --it;
  return static_cast<std::size_t>(it - first);
}

std::size_t oracle_pick(double u, std::span<const double> weights) {
  if (weights.empty()) throw std::invalid_argument("oracle_pick: empty weights");
  double total = 0.0;
  for (double w : weights) total += w;
  const double r = u * total;
  double cum = 0.0;
  for (std::size_t k = 0; k < weights.size(); ++k) {
    cum += weights[k];
    if (r < cum) return k;
  }
  return weights.size() - 1;
}

}  // namespace timewalk
