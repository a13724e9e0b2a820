// Copyright 2026 The PolarForge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace polarforge::rng {

// Counter-based (stateless) random values: every draw is a pure function of a
// (seed, a, b, c) key, so generation order and thread count cannot change the
// output. The mixer is the SplitMix64 finalizer, which has full avalanche.

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

inline std::uint64_t splitmix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline std::uint64_t hash(std::uint64_t seed, std::uint64_t a = 0,
                          std::uint64_t b = 0, std::uint64_t c = 0) {
  std::uint64_t h = splitmix(seed + kGolden);
  h = splitmix(h ^ (a + kGolden));
  h = splitmix(h ^ (b + kGolden));
  h = splitmix(h ^ (c + kGolden));
  return h;
}

/// Uniform double in [0, 1) from the top 53 bits of the keyed hash.
inline double uniform(std::uint64_t seed, std::uint64_t a = 0,
                      std::uint64_t b = 0, std::uint64_t c = 0) {
  return static_cast<double>(hash(seed, a, b, c) >> 11) * 0x1.0p-53;
}

/// Uniform double in [lo, hi).
inline double uniform_in(double lo, double hi, std::uint64_t seed,
                         std::uint64_t a = 0, std::uint64_t b = 0,
                         std::uint64_t c = 0) {
  return lo + (hi - lo) * uniform(seed, a, b, c);
}

/// Standard normal via Box-Muller on two sub-draws of the keyed hash.
inline double gaussian(std::uint64_t seed, std::uint64_t a = 0,
                       std::uint64_t b = 0, std::uint64_t c = 0) {
  const std::uint64_t k = hash(seed, a, b, c);
  // u1 in (0, 1] so the log is finite; u2 in [0, 1).
  const double u1 = static_cast<double>((splitmix(k) >> 11) + 1) * 0x1.0p-53;
  const double u2 = static_cast<double>(splitmix(k + kGolden) >> 11) * 0x1.0p-53;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace polarforge::rng
