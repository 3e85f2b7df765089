#pragma once

#include <cstdint>
#include <random>

namespace newscov {

/// Deterministic random source used everywhere the toolkit needs randomness.
/// Wraps mt19937_64 but implements its own bounded-integer and gaussian
/// draws, so a given seed produces the same stream on every platform and
/// standard library.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform double in [0, 1) with 53 random bits.
  double next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform index in [0, bound). Rejection sampling keeps it unbiased.
  std::size_t next_index(std::size_t bound);

  /// Standard normal draw (Box-Muller; the pair's second value is cached).
  double next_gaussian();

  bool next_bernoulli(double p) { return next_unit() < p; }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

/// SplitMix64 finalizer. Derives well-mixed values from a key without any
/// state, e.g. for the seeded random scorer.
std::uint64_t mix64(std::uint64_t x);

}  // namespace newscov
