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

#ifndef EGTA_NFG_HPP_
#define EGTA_NFG_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace egta {

// Absolute slack used for every set-membership comparison on utilities.
inline constexpr double kTol = 1e-12;

// One pure strategy id per player, 0-based.
using Profile = std::vector<std::size_t>;

struct UtilityIndex {
  std::size_t player = 0;
  Profile profile;
};

// Mixed-radix ranking of pure profiles, player 0 most significant.
class ProfileSpace {
 public:
  ProfileSpace() = default;

  explicit ProfileSpace(std::vector<std::size_t> strategy_counts)
      : strategy_counts_(std::move(strategy_counts)) {
    if (strategy_counts_.empty())
      throw std::invalid_argument("game needs at least one player");
    num_profiles_ = 1;
    for (std::size_t k : strategy_counts_) {
      if (k == 0)
        throw std::invalid_argument("every player needs a strategy");
      num_profiles_ *= k;
    }
    strides_.assign(strategy_counts_.size(), 1);
    for (std::size_t p = strategy_counts_.size() - 1; p > 0; --p)
      strides_[p - 1] = strides_[p] * strategy_counts_[p];
  }

  std::size_t num_players() const { return strategy_counts_.size(); }
  std::size_t num_profiles() const { return num_profiles_; }
  std::size_t num_indices() const { return num_players() * num_profiles_; }
  const std::vector<std::size_t>& strategy_counts() const {
    return strategy_counts_;
  }
  std::size_t strategy_count(std::size_t player) const {
    return strategy_counts_.at(player);
  }
  // Rank distance between consecutive strategies of `player`.
  std::size_t stride(std::size_t player) const { return strides_[player]; }

  std::size_t profile_rank(std::span<const std::size_t> profile) const {
    if (profile.size() != num_players())
      throw std::out_of_range("profile has wrong number of players");
    std::size_t rank = 0;
    for (std::size_t p = 0; p < profile.size(); ++p) {
      if (profile[p] >= strategy_counts_[p])
        throw std::out_of_range("strategy " + std::to_string(profile[p]) +
                                " out of range for player " +
                                std::to_string(p));
      rank += profile[p] * strides_[p];
    }
    return rank;
  }

  Profile profile_at(std::size_t rank) const {
    if (rank >= num_profiles_) throw std::out_of_range("profile rank");
    Profile s(num_players());
    for (std::size_t p = 0; p < s.size(); ++p) {
      s[p] = rank / strides_[p];
      rank %= strides_[p];
    }
    return s;
  }

  std::size_t strategy_of(std::size_t rank, std::size_t player) const {
    return (rank / strides_[player]) % strategy_counts_[player];
  }

  std::size_t flat_index(std::size_t player, std::size_t rank) const {
    return player * num_profiles_ + rank;
  }

  friend bool operator==(const ProfileSpace& a, const ProfileSpace& b) {
    return a.strategy_counts_ == b.strategy_counts_;
  }

 private:
  std::vector<std::size_t> strategy_counts_;
  std::vector<std::size_t> strides_;
  std::size_t num_profiles_ = 0;
};

// Dense normal-form game. Utilities are stored player-major; within a player
// block, profiles are ranked by ProfileSpace. All utilities lie in
// [-c/2, c/2] where c is the declared range width.
class NormalFormGame {
 public:
  NormalFormGame() = default;

  NormalFormGame(std::vector<std::size_t> strategy_counts,
                 std::vector<double> utilities, double range)
      : space_(std::move(strategy_counts)),
        utilities_(std::move(utilities)),
        range_(range) {
    if (utilities_.size() != space_.num_indices())
      throw std::invalid_argument(
          "utility tensor has " + std::to_string(utilities_.size()) +
          " entries, expected " + std::to_string(space_.num_indices()));
    if (!(range_ > 0.0) || !std::isfinite(range_))
      throw std::invalid_argument("utility range must be positive");
    for (std::size_t i = 0; i < utilities_.size(); ++i) {
      if (!std::isfinite(utilities_[i]) ||
          std::abs(utilities_[i]) > range_ / 2 + kTol)
        throw std::invalid_argument("utility " + std::to_string(i) +
                                    " outside [-c/2, c/2]");
    }
  }

  const ProfileSpace& space() const { return space_; }
  std::size_t num_players() const { return space_.num_players(); }
  std::size_t num_profiles() const { return space_.num_profiles(); }
  std::size_t num_indices() const { return utilities_.size(); }
  const std::vector<std::size_t>& strategy_counts() const {
    return space_.strategy_counts();
  }
  std::size_t strategy_count(std::size_t player) const {
    return space_.strategy_count(player);
  }
  std::size_t stride(std::size_t player) const { return space_.stride(player); }
  double range() const { return range_; }
  std::span<const double> utilities() const { return utilities_; }

  std::size_t profile_rank(std::span<const std::size_t> profile) const {
    return space_.profile_rank(profile);
  }
  Profile profile_at(std::size_t rank) const { return space_.profile_at(rank); }
  std::size_t strategy_of(std::size_t rank, std::size_t player) const {
    return space_.strategy_of(rank, player);
  }
  std::size_t flat_index(std::size_t player, std::size_t rank) const {
    return space_.flat_index(player, rank);
  }

  // Unchecked accessor for hot loops.
  double at(std::size_t player, std::size_t rank) const {
    return utilities_[player * space_.num_profiles() + rank];
  }

  double utility(const UtilityIndex& idx) const {
    if (idx.player >= num_players()) throw std::out_of_range("player");
    return at(idx.player, profile_rank(idx.profile));
  }

  // Utility vector u(s) over players.
  std::vector<double> payoffs(std::size_t rank) const {
    std::vector<double> u(num_players());
    for (std::size_t p = 0; p < u.size(); ++p) u[p] = at(p, rank);
    return u;
  }

  bool same_shape(const NormalFormGame& other) const {
    return space_ == other.space_;
  }

  friend bool operator==(const NormalFormGame& a, const NormalFormGame& b) {
    return a.space_ == b.space_ && a.utilities_ == b.utilities_ &&
           a.range_ == b.range_;
  }

 private:
  ProfileSpace space_;
  std::vector<double> utilities_;
  double range_ = 1.0;
};

inline double utility(const NormalFormGame& game, const UtilityIndex& idx) {
  return game.utility(idx);
}

// Regret of one player at a profile given by rank. Includes the
// self-deviation, so the result is never negative.
inline double regret_player_at(const NormalFormGame& game, std::size_t rank,
                               std::size_t player) {
  const std::size_t stride = game.stride(player);
  const std::size_t base = rank - game.strategy_of(rank, player) * stride;
  const double current = game.at(player, rank);
  double best = current;
  for (std::size_t k = 0; k < game.strategy_count(player); ++k)
    best = std::max(best, game.at(player, base + k * stride));
  return best - current;
}

inline double regret_at(const NormalFormGame& game, std::size_t rank) {
  double r = 0.0;
  for (std::size_t p = 0; p < game.num_players(); ++p)
    r = std::max(r, regret_player_at(game, rank, p));
  return r;
}

inline double regret_player(const NormalFormGame& game, const Profile& profile,
                            std::size_t player) {
  if (player >= game.num_players()) throw std::out_of_range("player");
  return regret_player_at(game, game.profile_rank(profile), player);
}

inline double regret(const NormalFormGame& game, const Profile& profile) {
  return regret_at(game, game.profile_rank(profile));
}

// Regret at every profile, indexed by rank.
inline std::vector<double> regret_table(const NormalFormGame& game) {
  std::vector<double> r(game.num_profiles());
  for (std::size_t s = 0; s < r.size(); ++s) r[s] = regret_at(game, s);
  return r;
}

inline double min_regret(const NormalFormGame& game) {
  const auto r = regret_table(game);
  return *std::min_element(r.begin(), r.end());
}

inline double excess_regret(const NormalFormGame& game,
                            const Profile& profile) {
  return regret(game, profile) - min_regret(game);
}

inline std::vector<double> excess_regret_table(const NormalFormGame& game) {
  auto r = regret_table(game);
  const double lo = *std::min_element(r.begin(), r.end());
  for (double& x : r) x -= lo;
  return r;
}

// Pure profiles with regret <= tag, in lexicographic (rank) order.
struct ProfileSet {
  std::vector<Profile> profiles;
  std::vector<std::size_t> ranks;
  double tag = 0.0;

  bool contains_rank(std::size_t rank) const {
    return std::binary_search(ranks.begin(), ranks.end(), rank);
  }
  bool empty() const { return ranks.empty(); }
  std::size_t size() const { return ranks.size(); }
};

inline bool is_subset(const ProfileSet& a, const ProfileSet& b) {
  return std::includes(b.ranks.begin(), b.ranks.end(), a.ranks.begin(),
                       a.ranks.end());
}

inline ProfileSet eps_nash_set(const NormalFormGame& game, double eps) {
  if (!(eps >= 0.0)) throw std::invalid_argument("eps must be >= 0");
  ProfileSet out;
  out.tag = eps;
  for (std::size_t s = 0; s < game.num_profiles(); ++s) {
    if (regret_at(game, s) <= eps + kTol) {
      out.ranks.push_back(s);
      out.profiles.push_back(game.profile_at(s));
    }
  }
  return out;
}

// Per-player distributions over pure strategies.
struct MixedProfile {
  std::vector<std::vector<double>> probs;
};

inline void validate_mix(const NormalFormGame& game, const MixedProfile& mix) {
  if (mix.probs.size() != game.num_players())
    throw std::invalid_argument("mixed profile has wrong number of players");
  for (std::size_t p = 0; p < mix.probs.size(); ++p) {
    const auto& v = mix.probs[p];
    if (v.size() != game.strategy_count(p))
      throw std::invalid_argument("mixed strategy has wrong support size");
    double total = 0.0;
    for (double x : v) {
      if (!(x >= 0.0)) throw std::invalid_argument("negative probability");
      total += x;
    }
    if (std::abs(total - 1.0) > kTol)
      throw std::invalid_argument("mixed strategy for player " +
                                  std::to_string(p) + " does not sum to 1");
  }
}

inline double mixed_utility(const NormalFormGame& game, const MixedProfile& mix,
                            std::size_t player) {
  if (player >= game.num_players()) throw std::out_of_range("player");
  validate_mix(game, mix);
  double total = 0.0;
  for (std::size_t s = 0; s < game.num_profiles(); ++s) {
    double w = 1.0;
    for (std::size_t p = 0; p < game.num_players() && w != 0.0; ++p)
      w *= mix.probs[p][game.strategy_of(s, p)];
    if (w != 0.0) total += w * game.at(player, s);
  }
  return total;
}

inline double linf_distance(const NormalFormGame& a, const NormalFormGame& b) {
  if (!a.same_shape(b)) throw std::invalid_argument("incompatible games");
  double d = 0.0;
  const auto ua = a.utilities();
  const auto ub = b.utilities();
  for (std::size_t i = 0; i < ua.size(); ++i)
    d = std::max(d, std::abs(ua[i] - ub[i]));
  return d;
}

// Builds a game from a payoff function over profiles. Range defaults to
// twice the largest absolute utility.
inline NormalFormGame make_game(
    std::vector<std::size_t> strategy_counts,
    const std::function<std::vector<double>(const Profile&)>& payoff,
    double range = 0.0) {
  const ProfileSpace shape(strategy_counts);
  const std::size_t profiles = shape.num_profiles();
  const std::size_t n = shape.num_players();
  std::vector<double> u(n * profiles);
  double biggest = 0.0;
  for (std::size_t s = 0; s < profiles; ++s) {
    const auto v = payoff(shape.profile_at(s));
    if (v.size() != n) throw std::invalid_argument("payoff arity");
    for (std::size_t p = 0; p < n; ++p) {
      u[p * profiles + s] = v[p];
      biggest = std::max(biggest, std::abs(v[p]));
    }
  }
  if (range <= 0.0) range = biggest > 0.0 ? 2.0 * biggest : 1.0;
  return NormalFormGame(std::move(strategy_counts), std::move(u), range);
}

}  // namespace egta

#endif  // EGTA_NFG_HPP_
