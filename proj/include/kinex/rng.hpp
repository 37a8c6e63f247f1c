#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <utility>

namespace kinex {

// SplitMix64 step. Advances `state` and returns the next output.
std::uint64_t splitmix64(std::uint64_t& state);

// Seed for replicate stream `stream` under master seed `seed`. Streams are
// decorrelated by two SplitMix64 rounds over (seed, stream).
std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream);

// Reproducible random source.
//
// Engine: std::mt19937_64 (algorithm fixed by the standard). All derived
// variates use hand-written conversions so results do not depend on the
// standard library's distribution implementations:
//   uniform_open  ((u >> 11) + 0.5) * 2^-53, strictly inside (0, 1)
//   index         Lemire's nearly-divisionless bounded integer
//   normal        Marsaglia polar method, spare cached
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

  std::uint64_t next_u64() { return engine_(); }
  double uniform_open();
  std::size_t index(std::size_t n);
  // Ordered pair (i, j), i != j, uniform over the n(n-1) possibilities.
  std::pair<std::size_t, std::size_t> distinct_pair(std::size_t n);
  double normal();

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace kinex
