#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pb/rng.hpp"

#include <set>
#include <stdexcept>
#include <vector>

using namespace pb;

TEST_CASE("same seed, same sequence") {
  RandomStream a(42);
  RandomStream b(42);
  for (int i = 0; i < 100; ++i) {
    CHECK(a.next_u64() == b.next_u64());
  }
}

TEST_CASE("different path, different stream") {
  RandomStream a(42, {1, 2});
  RandomStream b(42, {1, 3});
  RandomStream c(42, {2, 2});
  std::set<std::uint64_t> firsts{a.next_u64(), b.next_u64(), c.next_u64()};
  CHECK(firsts.size() == 3);
}

TEST_CASE("split derives independent children without consuming randomness") {
  RandomStream parent(7);
  RandomStream c1 = parent.split(0);
  const std::uint64_t value = parent.next_u64();
  RandomStream c2 = parent.split(0);  // split ignores generation state
  CHECK(c1.next_u64() == c2.next_u64());
  RandomStream fresh(7);
  CHECK(fresh.next_u64() == value);
}

TEST_CASE("next_below stays in range and covers all residues") {
  RandomStream rng(5);
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 200; ++i) {
    const std::uint64_t v = rng.next_below(6);
    CHECK(v < 6);
    seen.insert(v);
  }
  CHECK(seen.size() == 6);
  CHECK_THROWS_AS(rng.next_below(0), std::invalid_argument);
}

TEST_CASE("bernoulli edge probabilities") {
  RandomStream rng(9);
  for (int i = 0; i < 50; ++i) {
    CHECK(rng.bernoulli(1, 1));
    CHECK(!rng.bernoulli(0, 1));
  }
  CHECK_THROWS_AS(rng.bernoulli(2, 1), std::invalid_argument);
  CHECK_THROWS_AS(rng.bernoulli(1, 0), std::invalid_argument);
}

TEST_CASE("bernoulli(2,3) frequency is near 2/3") {
  RandomStream rng(123);
  int hits = 0;
  const int n = 30000;
  for (int i = 0; i < n; ++i) {
    if (rng.bernoulli(2, 3)) {
      ++hits;
    }
  }
  // 2/3 of 30000 is 20000; allow a generous deterministic band.
  CHECK(hits > 19500);
  CHECK(hits < 20500);
}
