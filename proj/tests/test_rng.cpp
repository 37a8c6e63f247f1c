#include <doctest.h>

#include <cmath>
#include <vector>

#include "kinex/rng.hpp"

using kinex::Rng;

TEST_CASE("rng: identical seed and stream give identical sequences") {
  Rng a(42, 3), b(42, 3);
  for (int i = 0; i < 1000; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("rng: streams under one seed differ") {
  Rng a(42, 0), b(42, 1), c(43, 0);
  int same_ab = 0, same_ac = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto x = a.next_u64();
    same_ab += x == b.next_u64();
    same_ac += x == c.next_u64();
  }
  CHECK(same_ab == 0);
  CHECK(same_ac == 0);
}

TEST_CASE("rng: seeding and first outputs are pinned") {
  // Reference values from an independent Python transcription of SplitMix64
  // and MT19937-64.
  std::uint64_t state = 0;
  CHECK(kinex::splitmix64(state) == 0xe220a8397b1dcdafULL);
  CHECK(kinex::stream_seed(1, 0) == 0xf18d6ce93d6cf1eeULL);
  Rng a(1, 0);
  CHECK(a.next_u64() == 0x5b4234592117b1fbULL);
  CHECK(a.next_u64() == 0x0da0a8010bb440abULL);
}

TEST_CASE("rng: uniform_open stays strictly inside (0, 1) with mean 1/2") {
  Rng rng(7);
  double sum = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform_open();
    REQUIRE(u > 0.0);
    REQUIRE(u < 1.0);
    sum += u;
  }
  // sd of the mean = sqrt(1/12 / n)
  CHECK(std::abs(sum / n - 0.5) < 4.0 * std::sqrt(1.0 / 12.0 / n));
}

TEST_CASE("rng: bounded index is uniform and distinct pairs never collide") {
  Rng rng(11);
  const std::size_t k = 7;
  std::vector<int> counts(k, 0);
  const int n = 70000;
  for (int i = 0; i < n; ++i) {
    const auto idx = rng.index(k);
    REQUIRE(idx < k);
    ++counts[idx];
  }
  double chi2 = 0.0;
  for (int c : counts) chi2 += (c - n / 7.0) * (c - n / 7.0) / (n / 7.0);
  CHECK(chi2 < 22.5);  // chi-square 6 dof, p ~ 0.001

  for (int i = 0; i < 10000; ++i) {
    const auto [a, b] = rng.distinct_pair(3);
    REQUIRE(a != b);
    REQUIRE(a < 3);
    REQUIRE(b < 3);
  }
}

TEST_CASE("rng: normal deviates have unit variance") {
  Rng rng(5);
  const int n = 400000;
  double s1 = 0.0, s2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double z = rng.normal();
    s1 += z;
    s2 += z * z;
  }
  CHECK(std::abs(s1 / n) < 4.0 / std::sqrt(n));
  CHECK(std::abs(s2 / n - 1.0) < 4.0 * std::sqrt(2.0 / n));
}
