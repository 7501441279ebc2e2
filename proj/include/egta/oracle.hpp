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

// Simulators: games whose utilities depend on a 64-bit condition drawn from
// a shared stream. Evaluation must be a pure function of (profile, condition).

#ifndef EGTA_ORACLE_HPP_
#define EGTA_ORACLE_HPP_

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "egta/nfg.hpp"
#include "egta/rng.hpp"

namespace egta {

class ConditionalGame {
 public:
  ConditionalGame(std::vector<std::size_t> strategy_counts, double range)
      : space_(std::move(strategy_counts)), range_(range) {
    if (!(range_ > 0.0))
      throw std::invalid_argument("utility range must be positive");
  }
  virtual ~ConditionalGame() = default;

  const ProfileSpace& space() const { return space_; }
  std::size_t num_players() const { return space_.num_players(); }
  std::size_t num_profiles() const { return space_.num_profiles(); }
  std::size_t num_indices() const { return space_.num_indices(); }
  double range() const { return range_; }

  // Writes u(s; y) for every player into `out` (size num_players()).
  virtual void evaluate(std::size_t rank, std::uint64_t condition,
                        std::span<double> out) const = 0;

  std::vector<double> evaluate(const Profile& profile,
                               std::uint64_t condition) const {
    std::vector<double> out(num_players());
    evaluate(space_.profile_rank(profile), condition, out);
    return out;
  }

  // Exact expectation over conditions, when known.
  virtual std::optional<NormalFormGame> expected_game() const {
    return std::nullopt;
  }
  // Exact per-index variances (player-major), when known.
  virtual std::optional<std::vector<double>> true_variances() const {
    return std::nullopt;
  }

 private:
  ProfileSpace space_;
  double range_;
};

// Fixed game with no randomness.
class DeterministicGame : public ConditionalGame {
 public:
  explicit DeterministicGame(NormalFormGame game)
      : ConditionalGame(game.strategy_counts(), game.range()),
        game_(std::move(game)) {}

  using ConditionalGame::evaluate;
  void evaluate(std::size_t rank, std::uint64_t,
                std::span<double> out) const override {
    for (std::size_t p = 0; p < num_players(); ++p) out[p] = game_.at(p, rank);
  }
  std::optional<NormalFormGame> expected_game() const override { return game_; }
  std::optional<std::vector<double>> true_variances() const override {
    return std::vector<double>(num_indices(), 0.0);
  }

 private:
  NormalFormGame game_;
};

// Wraps a caller-supplied evaluator.
class FunctionGame : public ConditionalGame {
 public:
  using Fn = std::function<void(std::size_t rank, std::uint64_t condition,
                                std::span<double> out)>;
  FunctionGame(std::vector<std::size_t> strategy_counts, double range, Fn fn)
      : ConditionalGame(std::move(strategy_counts), range), fn_(std::move(fn)) {}

  using ConditionalGame::evaluate;
  void evaluate(std::size_t rank, std::uint64_t condition,
                std::span<double> out) const override {
    fn_(rank, condition, out);
  }

 private:
  Fn fn_;
};

// Scaled-Bernoulli additive noise. Index (p, s) observes
// u_p(s) +/- gamma_{p,s} d / 2 with a fair sign; gamma ~ Beta(a, b) unless
// explicit scales are given.
struct NoiseSpec {
  double d = 0.0;
  double scale_alpha = 1.0;
  double scale_beta = 1.0;
  std::vector<double> scales;  // empty: draw from Beta at construction
};

class AdditiveNoiseGame : public ConditionalGame {
 public:
  AdditiveNoiseGame(NormalFormGame base, NoiseSpec noise,
                    std::uint64_t seed)
      : ConditionalGame(base.strategy_counts(), base.range() + noise.d),
        base_(std::move(base)),
        noise_(std::move(noise)),
        sign_key_(mix64(seed, 0x7369676eULL)) {
    if (!(noise_.d >= 0.0)) throw std::invalid_argument("noise d must be >= 0");
    if (noise_.scales.empty()) {
      if (!(noise_.scale_alpha > 0.0 && noise_.scale_beta > 0.0))
        throw std::invalid_argument("Beta shape parameters must be positive");
      SplitMix64 rng(mix64(seed, 0x7363616cULL));
      noise_.scales.resize(base_.num_indices());
      for (double& g : noise_.scales)
        g = sample_beta(rng, noise_.scale_alpha, noise_.scale_beta);
    }
    if (noise_.scales.size() != base_.num_indices())
      throw std::invalid_argument("noise scales must cover every index");
    for (double g : noise_.scales)
      if (!(g >= 0.0 && g <= 1.0))
        throw std::invalid_argument("noise scales must lie in [0, 1]");
  }

  using ConditionalGame::evaluate;
  void evaluate(std::size_t rank, std::uint64_t condition,
                std::span<double> out) const override {
    const std::size_t profiles = num_profiles();
    for (std::size_t p = 0; p < num_players(); ++p) {
      const std::size_t i = p * profiles + rank;
      out[p] = base_.at(p, rank) + noise_.scales[i] * sign(condition, i) *
                                       noise_.d / 2;
    }
  }

  // +1 or -1. For a fixed index, the sign is a fair coin across conditions.
  double sign(std::uint64_t condition, std::size_t flat_index) const {
    return (mix64(sign_key_, condition, flat_index) >> 63) ? 1.0 : -1.0;
  }

  std::optional<NormalFormGame> expected_game() const override {
    return base_;
  }
  std::optional<std::vector<double>> true_variances() const override {
    std::vector<double> v(noise_.scales.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
      const double half = noise_.scales[i] * noise_.d / 2;
      v[i] = half * half;
    }
    return v;
  }

  const NormalFormGame& base() const { return base_; }
  const NoiseSpec& noise() const { return noise_; }

 private:
  NormalFormGame base_;
  NoiseSpec noise_;
  std::uint64_t sign_key_;
};

inline AdditiveNoiseGame additive_noise_oracle(NormalFormGame base,
                                               NoiseSpec noise,
                                               std::uint64_t seed) {
  return AdditiveNoiseGame(std::move(base), std::move(noise), seed);
}

// Max over players of the true variances at each profile.
inline std::vector<double> profile_max_variances(
    const ProfileSpace& space, const std::vector<double>& variances) {
  if (variances.size() != space.num_indices())
    throw std::invalid_argument("variances must cover every index");
  std::vector<double> out(space.num_profiles(), 0.0);
  for (std::size_t p = 0; p < space.num_players(); ++p)
    for (std::size_t s = 0; s < out.size(); ++s)
      out[s] = std::max(out[s], variances[space.flat_index(p, s)]);
  return out;
}

}  // namespace egta

#endif  // EGTA_ORACLE_HPP_
