#include "doctest.h"

#include "hybridflow/rng.hpp"

#include <cmath>
#include <cstdint>
#include <vector>

using hybridflow::RngStream;

TEST_CASE("same seed, same draws, bit for bit") {
  RngStream a(42);
  RngStream b(42);
  for (int i = 0; i < 1000; ++i) {
    CHECK(a.next_u64() == b.next_u64());
  }
  RngStream c(42);
  RngStream d(42);
  for (int i = 0; i < 1000; ++i) {
    CHECK(c.normal() == d.normal());
  }
}

TEST_CASE("different seeds diverge") {
  RngStream a(1);
  RngStream b(2);
  int same = 0;
  for (int i = 0; i < 64; ++i) {
    if (a.next_u64() == b.next_u64()) ++same;
  }
  CHECK(same == 0);
}

TEST_CASE("substreams are a function of identity, not draw position") {
  RngStream parent1(7);
  RngStream parent2(7);
  for (int i = 0; i < 123; ++i) parent2.next_u64();  // advance one copy only
  RngStream child1 = parent1.substream(5);
  RngStream child2 = parent2.substream(5);
  for (int i = 0; i < 200; ++i) {
    CHECK(child1.next_u64() == child2.next_u64());
  }
}

TEST_CASE("substreams with different indices or depths differ") {
  RngStream root(7);
  RngStream s0 = root.substream(0);
  RngStream s1 = root.substream(1);
  RngStream s00 = root.substream(0).substream(0);
  int same01 = 0, same0n = 0;
  for (int i = 0; i < 64; ++i) {
    const std::uint64_t a = s0.next_u64();
    if (a == s1.next_u64()) ++same01;
    if (a == s00.next_u64()) ++same0n;
  }
  CHECK(same01 == 0);
  CHECK(same0n == 0);
  CHECK(s0.seed() == 7);
}

TEST_CASE("uniform stays strictly inside (0,1)") {
  RngStream g(99);
  double lo = 1.0, hi = 0.0;
  for (int i = 0; i < 200000; ++i) {
    const double u = g.uniform();
    CHECK(u > 0.0);
    CHECK(u < 1.0);
    lo = std::min(lo, u);
    hi = std::max(hi, u);
  }
  CHECK(lo < 0.01);  // the range actually gets exercised
  CHECK(hi > 0.99);
}

TEST_CASE("uniform and normal have the right first moments") {
  RngStream g(2024);
  const int n = 400000;
  double su = 0.0, su2 = 0.0, sn = 0.0, sn2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double u = g.uniform();
    su += u;
    su2 += u * u;
    const double z = g.normal();
    sn += z;
    sn2 += z * z;
  }
  const double mu_u = su / n;
  const double var_u = su2 / n - mu_u * mu_u;
  const double mu_n = sn / n;
  const double var_n = sn2 / n - mu_n * mu_n;
  // 4-sigma bands around the exact values
  CHECK(std::abs(mu_u - 0.5) < 4.0 * std::sqrt(1.0 / 12.0 / n));
  CHECK(std::abs(var_u - 1.0 / 12.0) < 0.001);
  CHECK(std::abs(mu_n) < 4.0 / std::sqrt(static_cast<double>(n)));
  CHECK(std::abs(var_n - 1.0) < 4.0 * std::sqrt(2.0 / n));
}
