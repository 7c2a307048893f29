#pragma once

// Reproducible random numbers.  The engine is std::mt19937_64, whose output
// sequence is fixed by the C++ standard; stream seeds are derived with
// SplitMix64 and the variate transforms below are spelled out so that the
// same (seed, stream) yields the same numbers on every platform.

#include <cstdint>
#include <random>

namespace stieltjes {

std::uint64_t splitmix64(std::uint64_t x);

class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  /// Independent generator for sub-stream `stream` of the same seed.
  Rng split(std::uint64_t stream) const { return Rng(seed_, stream); }

  std::uint64_t next() { return engine_(); }
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform integer in [lo, hi] by rejection (no modulo bias).
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);
  /// Standard normal by Box-Muller: sqrt(-2 ln(1 - u1)) cos(2 pi u2).
  double normal();
  bool bernoulli(double p) { return uniform() < p; }

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace stieltjes
