#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "timewalk/samplers.hpp"

using namespace timewalk;
using timewalk::testing::test_uniform;

namespace {

// Weights the closed-form pickers must reproduce.
std::vector<double> uniform_weights(std::size_t n) { return std::vector<double>(n, 1.0); }

std::vector<double> linear_weights(std::size_t n) {
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = static_cast<double>(i + 1);
  return w;
}

std::vector<double> exp_weights(std::size_t n) {
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = std::exp(static_cast<double>(i));
  return w;
}

}  // namespace

TEST_CASE("oracle_pick boundary convention") {
  // F(k) <= u < F(k+1): the boundary value belongs to the right cell.
  CHECK(oracle_pick(0.0, std::vector<double>{1, 1}) == 0);
  CHECK(oracle_pick(0.3, std::vector<double>{1, 2, 3}) == 1);  // F = (0, 1/6, 1/2, 1)
  CHECK(oracle_pick(0.5, std::vector<double>{1, 2, 3}) == 2);  // u == F(2)
}

TEST_CASE("pick_index_uniform examples") {
  CHECK(pick_index_uniform(0.0, 5) == 0);
  CHECK(pick_index_uniform(0.999, 5) == 4);
  CHECK(pick_index_uniform(0.5, 10) == 5);
  CHECK_THROWS_AS(pick_index_uniform(0.5, 0), std::invalid_argument);
}

TEST_CASE("pick_index_linear examples match the oracle") {
  CHECK(pick_index_linear(0.0, 4) == 0);
  const auto w3 = linear_weights(3);
  CHECK(oracle_pick(0.3, w3) == 1);
  CHECK(pick_index_linear(0.3, 3) == 1);
  CHECK(oracle_pick(0.95, w3) == 2);
  CHECK(pick_index_linear(0.95, 3) == 2);
}

TEST_CASE("pick_index_exponential examples match the oracle") {
  CHECK(pick_index_exponential(1e-12, 5) == 0);
  CHECK(oracle_pick(0.5, exp_weights(2)) == 1);  // F(1) = 1/(1+e) ~ 0.2689
  CHECK(pick_index_exponential(0.5, 2) == 1);
  CHECK(oracle_pick(0.1, exp_weights(3)) == 1);  // F = (0, .0900, .3348, 1)
  CHECK(pick_index_exponential(0.1, 3) == 1);
  CHECK(pick_index_exponential(0.0, 7) == 0);  // u = 0 clamps to index 0
}

TEST_CASE("closed-form pickers equal the oracle over random sweeps") {
  const std::size_t draws = 20000;
  for (std::size_t i = 0; i < draws; ++i) {
    const double u = test_uniform(101, i);
    const std::size_t n = 1 + CounterRng(55).bits(i, 0, 0) % 2000;
    CAPTURE(u);
    CAPTURE(n);
    REQUIRE(pick_index_uniform(u, n) == oracle_pick(u, uniform_weights(n)));
    REQUIRE(pick_index_linear(u, n) == oracle_pick(u, linear_weights(n)));
    const std::size_t n_exp = 1 + CounterRng(56).bits(i, 0, 0) % 700;
    REQUIRE(pick_index_exponential(u, n_exp) == oracle_pick(u, exp_weights(n_exp)));
  }
}

TEST_CASE("index pickers are monotone in u") {
  for (std::size_t n : {1UL, 2UL, 7UL, 100UL, 5000UL}) {
    std::size_t prev_u = 0, prev_l = 0, prev_e = 0;
    for (int s = 0; s < 500; ++s) {
      const double u = static_cast<double>(s) / 500.0;
      const auto iu = pick_index_uniform(u, n);
      const auto il = pick_index_linear(u, n);
      const auto ie = pick_index_exponential(u, n);
      CHECK(iu >= prev_u);
      CHECK(il >= prev_l);
      CHECK(ie >= prev_e);
      prev_u = iu;
      prev_l = il;
      prev_e = ie;
    }
  }
}

TEST_CASE("exponential picker large-n asymptotic form") {
  // Beyond the exact-form limit the tail distribution is geometric:
  // P(i = n-1-j) = e^-j (1 - 1/e).
  const std::size_t n = 100000;
  CHECK(pick_index_exponential(0.99, n) == n - 1);
  CHECK(pick_index_exponential(std::exp(-1.5), n) == n - 2);
  // ln(1e-300) ~ -690.78, so the smallest representable u reaches n - 691
  CHECK(pick_index_exponential(1e-300, n) == n - 691);
}

TEST_CASE("build_cumulative_weights examples") {
  using doctest::Approx;
  const auto single = build_cumulative_weights(std::vector<Timestamp>{7});
  REQUIRE(single.size() == 1);
  CHECK(single.prefix[0] == Approx(1.0));

  const auto tied = build_cumulative_weights(std::vector<Timestamp>{1, 1, 3});
  CHECK(tied.prefix[0] == Approx(1.0));
  CHECK(tied.prefix[1] == Approx(2.0));
  CHECK(tied.prefix[2] == Approx(2.0 + std::exp(2.0)));

  const auto ramp = build_cumulative_weights(std::vector<Timestamp>{0, 1, 2});
  CHECK(ramp.prefix[2] == Approx(1.0 + std::exp(1.0) + std::exp(2.0)));

  CHECK_THROWS_AS(build_cumulative_weights({}), std::invalid_argument);
}

TEST_CASE("pick_weighted examples and oracle equality") {
  CumulativeWeights cw;
  cw.prefix = {1.0, 2.0, 9.389};
  CHECK(pick_weighted(0.123, CumulativeWeights{{5.0}}) == 0);
  CHECK(pick_weighted(0.5, cw) == 2);  // r = 4.6945
  CHECK(pick_weighted(0.1, cw) == 0);  // r = 0.9389

  // smallest k with prefix[k] >= u * total equals a linear scan for all inputs
  for (std::size_t i = 0; i < 5000; ++i) {
    const double u = test_uniform(77, i);
    std::vector<double> weights;
    const std::size_t n = 1 + CounterRng(78).bits(i, 0, 0) % 50;
    for (std::size_t k = 0; k < n; ++k) {
      weights.push_back(1e-3 + test_uniform(79, i * 64 + k));
    }
    CumulativeWeights c;
    double acc = 0;
    for (double w : weights) c.prefix.push_back(acc += w);
    const double r = u * c.total();
    std::size_t expected = 0;
    while (expected + 1 < n && c.prefix[expected] < r) ++expected;
    REQUIRE(pick_weighted(u, c) == expected);
  }
}

TEST_CASE("pick_weighted_range matches slice-local pick_weighted") {
  std::vector<double> prefix;
  double acc = 0;
  for (std::size_t k = 0; k < 40; ++k) prefix.push_back(acc += 0.5 + test_uniform(80, k));
  for (std::size_t i = 0; i < 2000; ++i) {
    const std::size_t begin = CounterRng(81).bits(i, 0, 0) % 39;
    const std::size_t end = begin + 1 + CounterRng(82).bits(i, 0, 0) % (40 - begin);
    const double base = begin > 0 ? prefix[begin - 1] : 0.0;
    const double u = test_uniform(83, i);

    CumulativeWeights local;
    for (std::size_t k = begin; k < end; ++k) local.prefix.push_back(prefix[k] - base);
    REQUIRE(pick_weighted_range(u, prefix, begin, end, base) == pick_weighted(u, local));
  }
}

TEST_CASE("node2vec_accept arithmetic") {
  const auto yes = [](NodeId, NodeId) { return true; };
  const auto no = [](NodeId, NodeId) { return false; };

  // p = q = 1: beta_max = 1, every ratio is 1, always accept.
  Node2VecParams unit{1.0, 1.0};
  CHECK(unit.beta_max() == 1.0);
  CHECK(node2vec_accept(1, 2, unit, no, 0.999999));

  Node2VecParams skewed{2.0, 0.5};
  CHECK(skewed.beta_max() == 2.0);
  CHECK(node2vec_accept(1, 1, skewed, no, 0.2));        // return: ratio 0.25
  CHECK_FALSE(node2vec_accept(1, 1, skewed, no, 0.3));
  CHECK_FALSE(node2vec_accept(1, 2, skewed, yes, 0.7));  // adjacent: ratio 0.5
  CHECK(node2vec_accept(1, 2, skewed, yes, 0.49));
  CHECK(node2vec_accept(1, 2, skewed, no, 0.99));        // distant: ratio 1.0
}
