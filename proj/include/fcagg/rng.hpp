#pragma once

#include <cstdint>

namespace fcagg {

// Counter-based pseudo-random stream: value k of stream(seed) is a pure
// function of (seed, k), so a suite replayed with the same seed reproduces
// every probe bit-for-bit on any platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = seed_ + (++counter_) * 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // uniform in [0,1), 53-bit resolution
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double next_in(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

  std::uint64_t next_below(std::uint64_t n) { return next_u64() % n; }

  int next_index(int n) { return static_cast<int>(next_below(static_cast<std::uint64_t>(n))); }

  // independent substream, itself reproducible
  Rng fork(std::uint64_t stream) const {
    return Rng(seed_ ^ ((stream + 1) * 0xD1B54A32D192ED03ull));
  }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

}  // namespace fcagg
