//
// Copyright 2026 gsopt contributors
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

namespace gsopt {

/// Seeded random stream used for all stochastic parts of a run.
///
/// The generator is std::mt19937_64, which is bit-exactly specified by the
/// C++ standard, and every derived quantity (uniforms, normals) is computed
/// here from raw 64-bit words rather than through distribution objects, so
/// the same seed yields the same sequence on every platform.
class RngStream {
public:
  explicit RngStream(std::uint64_t seed) : gen_(seed), seed_(seed) {}

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next_u64() { return gen_(); }

  /// Uniform double in [0, 1), 53-bit resolution.
  double uniform() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  /// Uniform double in (0, 1]; safe as a log() argument.
  double uniform_open() {
    return static_cast<double>((gen_() >> 11) + 1) * 0x1.0p-53;
  }

  /// Standard normal via Box-Muller. Consumes two words per call; no spare
  /// is cached so the word count per draw stays fixed.
  double normal() {
    const double u1 = uniform_open();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
  }

private:
  std::mt19937_64 gen_;
  std::uint64_t seed_;
};

namespace detail {
inline std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}
}  // namespace detail

/// Derives a child seed from a base seed plus a textual tag and an index.
/// Used to give every (problem, method, seed-index) run its own stream.
inline std::uint64_t mix_seed(std::uint64_t base, std::string_view tag, std::uint64_t k = 0) {
  std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a over the tag
  for (const char ch : tag) {
    h ^= static_cast<unsigned char>(ch);
    h *= 0x100000001b3ULL;
  }
  return detail::splitmix64(base ^ detail::splitmix64(h ^ detail::splitmix64(k)));
}

}  // namespace gsopt
