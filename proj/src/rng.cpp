#include "structsparse/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace structsparse {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

namespace {
std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001B3ULL;
  }
  return h;
}
}  // namespace

std::uint64_t derive_seed(std::uint64_t master, std::string_view purpose,
                          std::uint64_t i, std::uint64_t j) {
  std::uint64_t h = mix64(master ^ fnv1a64(purpose));
  h = mix64(h ^ i);
  h = mix64(h ^ j);
  return h;
}

std::int64_t Rng::uniform_int(std::int64_t lo, std::int64_t hi) {
  if (lo > hi) throw std::invalid_argument("Rng::uniform_int: lo > hi");
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  if (span == 0) return static_cast<std::int64_t>(eng_());  // full 64-bit range
  // Rejection sampling keeps the distribution exactly uniform.
  const std::uint64_t limit = std::uint64_t(-1) - std::uint64_t(-1) % span;
  std::uint64_t draw;
  do {
    draw = eng_();
  } while (draw >= limit);
  return lo + static_cast<std::int64_t>(draw % span);
}

double Rng::normal() {
  if (has_cached_) {
    has_cached_ = false;
    return cached_;
  }
  // Box-Muller; u1 is shifted into (0, 1] so the log never sees zero.
  const double u1 =
      (static_cast<double>(eng_() >> 11) + 1.0) * 0x1.0p-53;
  const double u2 = static_cast<double>(eng_() >> 11) * 0x1.0p-53;
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  cached_ = radius * std::sin(angle);
  has_cached_ = true;
  return radius * std::cos(angle);
}

}  // namespace structsparse
