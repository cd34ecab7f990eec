#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "timewalk/rng.hpp"

using namespace timewalk;

TEST_CASE("draws are pure functions of (seed, walk, hop, ordinal)") {
  const CounterRng a(42), b(42), c(43);
  CHECK(a.bits(1, 2, 3) == b.bits(1, 2, 3));
  CHECK(a.bits(1, 2, 3) != c.bits(1, 2, 3));
  CHECK(a.bits(1, 2, 3) != a.bits(1, 2, 4));
  CHECK(a.bits(1, 2, 3) != a.bits(1, 3, 3));
  CHECK(a.bits(1, 2, 3) != a.bits(2, 2, 3));
}

TEST_CASE("uniform stays in [0, 1) and fills the range") {
  const CounterRng rng(7);
  double lo = 1.0, hi = 0.0, sum = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform(i, 0, 0);
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    lo = std::min(lo, u);
    hi = std::max(hi, u);
    sum += u;
  }
  CHECK(lo < 0.001);
  CHECK(hi > 0.999);
  CHECK(sum / n == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("no collisions across a large draw block") {
  const CounterRng rng(11);
  std::set<std::uint64_t> seen;
  for (std::uint64_t w = 0; w < 200; ++w) {
    for (std::uint64_t h = 0; h < 50; ++h) {
      seen.insert(rng.bits(w, h, 0));
    }
  }
  CHECK(seen.size() == 200 * 50);
}
