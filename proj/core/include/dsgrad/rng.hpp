#pragma once

#include <cstdint>

namespace dsgrad {

// Deterministic PRNG used everywhere randomness is needed (graph switching,
// initial states, sampling-based certification, tests).  Standard-library
// distributions are implementation-defined, so uniform deviates are derived
// from the raw 64-bit stream directly; a given seed produces the same
// sequence on every platform.

inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// xoshiro256++ seeded through splitmix64.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& word : s_) word = splitmix64(sm);
  }

  // Independent stream for (seed, stream): lets per-round graph matrices be
  // pure functions of (config seed, round index).
  Rng(std::uint64_t seed, std::uint64_t stream)
      : Rng(mix(seed, stream)) {}

  static std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
    std::uint64_t sm = a;
    std::uint64_t h = splitmix64(sm);
    sm = h ^ b;
    return splitmix64(sm);
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // Uniform in [0, 1) with 53 random bits.
  double uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform01();
  }

  // Uniform integer in [0, n); n > 0.  Rejection-free multiply-shift would
  // bias for huge n; the ranges used here are tiny, so modulo of a fresh
  // draw after rejection of the biased tail is exact and cheap.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
    std::uint64_t v = next_u64();
    while (v >= limit) v = next_u64();
    return v % n;
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t s_[4];
};

}  // namespace dsgrad
