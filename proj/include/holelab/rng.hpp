#pragma once

#include <cmath>
#include <cstdint>

namespace holelab::rng {

/// SplitMix64 finalizer. Full-avalanche 64-bit permutation step.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

/// Counter-based stream: the w-th 64-bit word of the stream keyed by
/// (a, b, c). No state is carried between calls, so distinct trials and
/// coefficient indices can be drawn in any order on any thread with
/// bit-identical results.
constexpr std::uint64_t word(std::uint64_t a, std::uint64_t b, std::uint64_t c,
                             std::uint64_t w) noexcept {
  std::uint64_t h = mix64(a);
  h = mix64(h ^ b);
  h = mix64(h ^ c);
  return mix64(h ^ w);
}

/// Uniform in [0, 1) with 53-bit resolution.
inline double u01(std::uint64_t bits) noexcept {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

/// Standard normal via Box-Muller on words (w, w+1) of stream (a, b, c).
inline double gaussian(std::uint64_t a, std::uint64_t b, std::uint64_t c,
                       std::uint64_t w = 0) noexcept {
  const double u1 = u01(word(a, b, c, w));
  const double u2 = u01(word(a, b, c, w + 1));
  // log1p(-u1) = log(1 - u1); u1 < 1 keeps the argument nonzero.
  const double r = std::sqrt(-2.0 * std::log1p(-u1));
  return r * std::cos(2.0 * M_PI * u2);
}

/// Pair of independent standard normals from the same two words.
inline void gaussian_pair(std::uint64_t a, std::uint64_t b, std::uint64_t c,
                          std::uint64_t w, double& g0, double& g1) noexcept {
  const double u1 = u01(word(a, b, c, w));
  const double u2 = u01(word(a, b, c, w + 1));
  const double r = std::sqrt(-2.0 * std::log1p(-u1));
  g0 = r * std::cos(2.0 * M_PI * u2);
  g1 = r * std::sin(2.0 * M_PI * u2);
}

}  // namespace holelab::rng
