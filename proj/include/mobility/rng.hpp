#pragma once

// Seedable generator with hand-rolled distributions so draws are identical
// across standard libraries. Substreams are keyed by (seed, generation, slot).

#include <cstdint>
#include <random>

namespace mobility {

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Independent stream for one slot of one generation.
  static Rng substream(std::uint64_t seed, std::uint64_t generation, std::uint64_t slot) {
    return Rng(splitmix64(splitmix64(splitmix64(seed) ^ generation) ^ slot));
  }

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t v;
    do {
      v = next();
    } while (v >= limit);
    return v % bound;
  }

  /// Uniform real in [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return p >= 1.0 || (p > 0.0 && uniform() < p); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace mobility
