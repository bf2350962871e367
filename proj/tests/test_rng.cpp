#include <doctest.h>

#include <cmath>

#include "snake/rng.hpp"

using snake::Rng;

TEST_CASE("identical seeds give identical streams") {
  Rng a(42), b(42);
  for (int i = 0; i < 1000; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("next_below stays within bounds and covers them") {
  Rng rng(7);
  bool seen[5] = {};
  for (int i = 0; i < 2000; ++i) {
    const auto v = rng.next_below(5);
    REQUIRE(v < 5);
    seen[v] = true;
  }
  for (bool s : seen) CHECK(s);
}

TEST_CASE("next_below is close to uniform") {
  Rng rng(123);
  const int bins = 10, draws = 100000;
  int counts[10] = {};
  for (int i = 0; i < draws; ++i) ++counts[rng.next_below(bins)];
  for (int c : counts) {
    // 5 sigma around draws/bins with binomial sigma ~ 95
    CHECK(std::abs(c - draws / bins) < 500);
  }
}

TEST_CASE("next_double lies in [0,1)") {
  Rng rng(9);
  for (int i = 0; i < 10000; ++i) {
    const double u = rng.next_double();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
  }
}

TEST_CASE("gaussian moments") {
  Rng rng(2024);
  const int n = 200000;
  double sum = 0, sum_sq = 0;
  for (int i = 0; i < n; ++i) {
    const double g = rng.next_gaussian();
    sum += g;
    sum_sq += g * g;
  }
  CHECK(std::abs(sum / n) < 0.01);
  CHECK(std::abs(sum_sq / n - 1.0) < 0.02);
}

TEST_CASE("split streams differ from the parent") {
  Rng parent(5);
  Rng child = parent.split();
  int equal = 0;
  for (int i = 0; i < 100; ++i)
    if (parent.next_u64() == child.next_u64()) ++equal;
  CHECK(equal == 0);
}
