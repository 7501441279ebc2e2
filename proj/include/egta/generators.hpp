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

// Exact game generators: random zero-sum, random congestion, the fixed
// congestion fixtures, the equilibrium-welfare counterexample family, and
// bounded perturbations.

#ifndef EGTA_GENERATORS_HPP_
#define EGTA_GENERATORS_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "egta/nfg.hpp"
#include "egta/rng.hpp"

namespace egta {

inline NormalFormGame gen_random_zero_sum(std::size_t k, double u0,
                                          std::uint64_t seed) {
  if (k == 0) throw std::invalid_argument("k must be positive");
  if (!(u0 > 0.0)) throw std::invalid_argument("u0 must be positive");
  SplitMix64 rng(mix64(seed, 0x525aULL));
  const std::size_t profiles = k * k;
  std::vector<double> u(2 * profiles);
  for (std::size_t s = 0; s < profiles; ++s) {
    u[s] = uniform(rng, -u0 / 2, u0 / 2);
    u[profiles + s] = -u[s];
  }
  return NormalFormGame({k, k}, std::move(u), u0);
}

// Facility sets per strategy per player; facilities are 0-based.
struct CongestionStructure {
  std::size_t num_facilities = 0;
  std::vector<std::vector<std::vector<std::size_t>>> strategies;
};

// Cost of one facility used by n players.
using FacilityCost = std::function<double(std::size_t facility, std::size_t n)>;

inline double linear_cost(std::size_t /*facility*/, std::size_t n) {
  return double(n);
}

// Per-player costs C_p(s) = sum_{e in s_p} f_e(n_e(s)).
inline std::vector<double> congestion_costs(const CongestionStructure& cs,
                                            const Profile& profile,
                                            const FacilityCost& cost) {
  std::vector<std::size_t> load(cs.num_facilities, 0);
  for (std::size_t p = 0; p < profile.size(); ++p)
    for (std::size_t e : cs.strategies[p][profile[p]]) ++load[e];
  std::vector<double> c(profile.size(), 0.0);
  for (std::size_t p = 0; p < profile.size(); ++p)
    for (std::size_t e : cs.strategies[p][profile[p]]) c[p] += cost(e, load[e]);
  return c;
}

// Unscaled congestion game with utilities -C_p(s).
inline NormalFormGame congestion_game(const CongestionStructure& cs,
                                      const FacilityCost& cost = linear_cost) {
  std::vector<std::size_t> counts;
  for (const auto& sp : cs.strategies) counts.push_back(sp.size());
  return make_game(counts, [&](const Profile& s) {
    auto c = congestion_costs(cs, s, cost);
    for (double& x : c) x = -x;
    return c;
  });
}

// Random strategy sets: |S_p| ~ U[1, k_max]; facility e (1-based) joins a
// strategy with probability powerlaw_alpha^e. Strategies are nonempty and
// distinct within a player; offending draws are redrawn.
inline CongestionStructure random_congestion_structure(
    std::size_t num_players, std::size_t num_facilities, std::size_t k_max,
    double powerlaw_alpha, std::uint64_t seed) {
  if (num_players == 0 || num_facilities == 0 || k_max == 0)
    throw std::invalid_argument("congestion sizes must be positive");
  if (num_facilities < 63 && k_max > (std::size_t(1) << num_facilities) - 1)
    throw std::invalid_argument("k_max exceeds the number of facility sets");
  if (!(powerlaw_alpha > 0.0 && powerlaw_alpha <= 1.0))
    throw std::invalid_argument("powerlaw alpha must lie in (0, 1]");
  SplitMix64 rng(mix64(seed, 0x5243ULL));
  CongestionStructure cs;
  cs.num_facilities = num_facilities;
  cs.strategies.resize(num_players);
  for (auto& sp : cs.strategies) {
    const std::size_t k = 1 + uniform_below(rng(), k_max);
    while (sp.size() < k) {
      std::vector<std::size_t> facilities;
      for (std::size_t attempt = 0; facilities.empty(); ++attempt) {
        if (attempt > 10'000'000)
          throw std::runtime_error("powerlaw alpha too small to draw strategies");
        for (std::size_t e = 0; e < num_facilities; ++e)
          if (uniform01(rng) < std::pow(powerlaw_alpha, double(e + 1)))
            facilities.push_back(e);
      }
      if (std::find(sp.begin(), sp.end(), facilities) == sp.end())
        sp.push_back(std::move(facilities));
    }
  }
  return cs;
}

// Affinely maps every utility of `game` into (-u0/2, u0/2) with one
// increasing map shared by all players.
inline NormalFormGame rescale_into(const NormalFormGame& game, double u0) {
  if (!(u0 > 0.0)) throw std::invalid_argument("u0 must be positive");
  const auto u = game.utilities();
  const double lo = *std::min_element(u.begin(), u.end());
  const double hi = *std::max_element(u.begin(), u.end());
  const double mid = (lo + hi) / 2;
  const double scale = hi > lo ? 0.999 * u0 / (hi - lo) : 0.0;
  std::vector<double> out(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = (u[i] - mid) * scale;
  return NormalFormGame(game.strategy_counts(), std::move(out), u0);
}

inline NormalFormGame gen_random_congestion(
    std::size_t num_players, std::size_t num_facilities, std::size_t k_max,
    double powerlaw_alpha, double u0, std::uint64_t seed,
    const FacilityCost& cost = linear_cost) {
  const auto cs = random_congestion_structure(num_players, num_facilities,
                                              k_max, powerlaw_alpha, seed);
  return rescale_into(congestion_game(cs, cost), u0);
}

// Every player may use any nonempty facility subset; strategy j is the
// subset with bitmask j + 1.
inline CongestionStructure all_subsets_structure(std::size_t num_players,
                                                 std::size_t num_facilities) {
  if (num_players == 0 || num_facilities == 0 || num_facilities > 16)
    throw std::invalid_argument("all-subsets congestion needs 1..16 facilities");
  CongestionStructure cs;
  cs.num_facilities = num_facilities;
  std::vector<std::vector<std::size_t>> subsets;
  for (std::size_t mask = 1; mask < (std::size_t(1) << num_facilities); ++mask) {
    std::vector<std::size_t> s;
    for (std::size_t e = 0; e < num_facilities; ++e)
      if (mask >> e & 1) s.push_back(e);
    subsets.push_back(std::move(s));
  }
  cs.strategies.assign(num_players, subsets);
  return cs;
}

// f_e(n) = a_e n + b_e with a_e ~ U(0, 1], b_e ~ U[0, 1): nondecreasing.
inline FacilityCost random_affine_costs(std::size_t num_facilities,
                                        std::uint64_t seed) {
  SplitMix64 rng(mix64(seed, 0x636f7374ULL));
  std::vector<double> a(num_facilities), b(num_facilities);
  for (std::size_t e = 0; e < num_facilities; ++e) {
    a[e] = 1.0 - uniform01(rng);
    b[e] = uniform01(rng);
  }
  return [a, b](std::size_t e, std::size_t n) { return a[e] * double(n) + b[e]; };
}

inline CongestionStructure gamma1_structure() {
  return {6,
          {{{0, 3}, {1, 5, 4}}, {{1, 4}, {2, 3, 5}}, {{2, 5}, {0, 3, 4}}}};
}

inline CongestionStructure gamma2_structure() {
  return {6, {{{0, 3}, {1, 4, 5}}, {{1, 4}, {2, 3, 5}}}};
}

// Three-agent congestion fixture with pure equilibria (0,0,0) and (1,1,1).
inline NormalFormGame fixture_gamma1() {
  return congestion_game(gamma1_structure());
}

// Two-agent congestion fixture with the unique pure equilibrium (0,0).
inline NormalFormGame fixture_gamma2() {
  return congestion_game(gamma2_structure());
}

// 2x2 game [[(g,-g), (-g,g)], [(g-c,-g), (c-g,g)]].
inline NormalFormGame gen_counterexample(double gamma, double c_param) {
  return make_game({2, 2}, [&](const Profile& s) -> std::vector<double> {
    const double col = s[1] == 0 ? -gamma : gamma;
    if (s[0] == 0) return {s[1] == 0 ? gamma : -gamma, col};
    return {s[1] == 0 ? gamma - c_param : c_param - gamma, col};
  });
}

enum class PerturbDistribution { kUniform, kParabolic, kArcsine };

inline PerturbDistribution parse_perturb_distribution(const std::string& s) {
  if (s == "uniform") return PerturbDistribution::kUniform;
  if (s == "parabolic") return PerturbDistribution::kParabolic;
  if (s == "arcsine") return PerturbDistribution::kArcsine;
  throw std::invalid_argument("unknown perturbation distribution: " + s);
}

// Adds iid offsets on [-eps, eps] to every utility. Parabolic is Beta(2,2)
// and arcsine Beta(1/2,1/2), both rescaled to [-eps, eps].
inline NormalFormGame perturb_uniform(const NormalFormGame& base, double eps,
                                      std::uint64_t seed,
                                      PerturbDistribution dist =
                                          PerturbDistribution::kUniform) {
  if (!(eps >= 0.0)) throw std::invalid_argument("eps must be >= 0");
  SplitMix64 rng(mix64(seed, 0x5045ULL));
  const auto u = base.utilities();
  std::vector<double> out(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    double unit = 0.0;  // in [0, 1]
    switch (dist) {
      case PerturbDistribution::kUniform:
        unit = uniform01(rng);
        break;
      case PerturbDistribution::kParabolic:
        unit = sample_beta(rng, 2.0, 2.0);
        break;
      case PerturbDistribution::kArcsine:
        unit = sample_beta(rng, 0.5, 0.5);
        break;
    }
    out[i] = u[i] + eps * (2.0 * unit - 1.0);
  }
  return NormalFormGame(base.strategy_counts(), std::move(out),
                        base.range() + 2.0 * eps);
}

// Adds `offset` to every utility; the range grows to stay centered.
inline NormalFormGame shift_utilities(const NormalFormGame& game,
                                      double offset) {
  std::vector<double> out(game.utilities().begin(), game.utilities().end());
  for (double& x : out) x += offset;
  return NormalFormGame(game.strategy_counts(), std::move(out),
                        game.range() + 2.0 * std::abs(offset));
}

}  // namespace egta

#endif  // EGTA_GENERATORS_HPP_
