// Copyright 2026 The egta Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef EGTA_RNG_HPP_
#define EGTA_RNG_HPP_

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>

namespace egta {

// SplitMix64 finalizer; a bijective 64-bit mixer.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t mix64(std::uint64_t a, std::uint64_t b) {
  return mix64(mix64(a) ^ (b + 0x632be59bd9b4e019ULL));
}

constexpr std::uint64_t mix64(std::uint64_t a, std::uint64_t b,
                              std::uint64_t c) {
  return mix64(mix64(a, b), c);
}

// The j-th condition of the stream keyed by `master_seed`. Conditions do not
// depend on who consumes them.
constexpr std::uint64_t condition_at(std::uint64_t master_seed,
                                     std::uint64_t j) {
  return mix64(master_seed ^ 0xd1b54a32d192ed03ULL, j);
}

// Seed for the replicate `id` of an experiment keyed by `master_seed`.
constexpr std::uint64_t derive_seed(std::uint64_t master_seed,
                                    std::uint64_t id) {
  return mix64(master_seed, 0x5851f42d4c957f2dULL, id);
}

// Counter-based UniformRandomBitGenerator.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }
  result_type operator()() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(std::uint64_t bits) {
  return double(bits >> 11) * 0x1.0p-53;
}

inline double uniform01(SplitMix64& rng) { return uniform01(rng()); }

inline double uniform(SplitMix64& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform01(rng);
}

// Uniform integer in [0, n) by multiply-shift.
inline std::uint64_t uniform_below(std::uint64_t bits, std::uint64_t n) {
  __extension__ using u128 = unsigned __int128;
  return std::uint64_t(u128(bits) * n >> 64);
}

inline double sample_beta(SplitMix64& rng, double a, double b) {
  std::gamma_distribution<double> ga(a, 1.0);
  std::gamma_distribution<double> gb(b, 1.0);
  const double x = ga(rng);
  const double y = gb(rng);
  if (x + y == 0.0) return a >= b ? 1.0 : 0.0;
  return x / (x + y);
}

}  // namespace egta

#endif  // EGTA_RNG_HPP_
