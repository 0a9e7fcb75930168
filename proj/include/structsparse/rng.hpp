#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace structsparse {

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

/// Derives an independent stream seed from a master seed, a purpose tag and
/// up to two stream ids. Every (master, purpose, i, j) combination gets its
/// own stream, so trials can be generated in any order (or in parallel)
/// without changing the produced values.
std::uint64_t derive_seed(std::uint64_t master, std::string_view purpose,
                          std::uint64_t i = 0, std::uint64_t j = 0);

/// Reproducible random source: MT19937-64 (engine output is pinned by the
/// C++ standard) with in-house uniform/normal mappings, so the produced
/// value stream does not depend on the standard library's distribution
/// implementations. The exact stream is frozen by a golden-value test.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t bits() { return eng_(); }

  /// Uniform in [0, 1) with 53-bit resolution.
  double uniform() {
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [lo, hi], inclusive, by rejection.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

  /// Standard normal via Box-Muller; pairs are cached.
  double normal();

 private:
  std::mt19937_64 eng_;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

}  // namespace structsparse
