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

#ifndef EGTA_PROPERTIES_HPP_
#define EGTA_PROPERTIES_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "egta/generators.hpp"
#include "egta/nfg.hpp"

namespace egta {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// ---------------------------------------------------------------------------
// Welfare
// ---------------------------------------------------------------------------

enum class WelfareKind { kPowerMean, kGini, kUtilitarianSum };

// Welfare function over a utility vector. Empty weights mean uniform.
struct WelfareSpec {
  WelfareKind kind = WelfareKind::kUtilitarianSum;
  double rho = 1.0;
  std::vector<double> weights;

  static WelfareSpec utilitarian() { return {}; }
  static WelfareSpec power_mean(double rho, std::vector<double> w = {}) {
    return {WelfareKind::kPowerMean, rho, std::move(w)};
  }
  // `w` is the decreasing weight vector applied to ascending utilities.
  static WelfareSpec gini(std::vector<double> w = {}) {
    return {WelfareKind::kGini, 1.0, std::move(w)};
  }
};

namespace internal {

inline std::vector<double> resolve_weights(const WelfareSpec& spec,
                                           std::size_t n) {
  if (spec.weights.empty()) return std::vector<double>(n, 1.0 / double(n));
  if (spec.weights.size() != n)
    throw std::invalid_argument("welfare weights have wrong length");
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!(spec.weights[i] >= 0.0))
      throw std::invalid_argument("welfare weights must be nonnegative");
    if (spec.kind == WelfareKind::kGini && i > 0 &&
        spec.weights[i] > spec.weights[i - 1] + kTol)
      throw std::invalid_argument("gini weights must be nonincreasing");
    total += spec.weights[i];
  }
  if (std::abs(total - 1.0) > kTol)
    throw std::invalid_argument("welfare weights must sum to 1");
  return spec.weights;
}

inline bool is_positive_integer(double x) {
  return std::isfinite(x) && x >= 1.0 && std::floor(x) == x;
}

inline double power_mean(std::span<const double> u,
                         const std::vector<double>& w, double rho,
                         std::size_t rank) {
  for (std::size_t p = 0; p < u.size(); ++p) {
    const bool bad = rho < 1.0 ? !(u[p] > 0.0)
                               : (!is_positive_integer(rho) && u[p] < 0.0);
    if (bad)
      throw std::domain_error("power-mean welfare with rho=" +
                              std::to_string(rho) + " undefined at player " +
                              std::to_string(p) + ", profile rank " +
                              std::to_string(rank) + " (utility " +
                              std::to_string(u[p]) + ")");
  }
  if (rho == kInf || rho == -kInf) {
    double best = rho > 0 ? -kInf : kInf;
    for (std::size_t p = 0; p < u.size(); ++p) {
      if (w[p] <= 0.0) continue;
      best = rho > 0 ? std::max(best, u[p]) : std::min(best, u[p]);
    }
    return best;
  }
  if (rho == 0.0) {
    double log_sum = 0.0;
    for (std::size_t p = 0; p < u.size(); ++p)
      if (w[p] > 0.0) log_sum += w[p] * std::log(u[p]);
    return std::exp(log_sum);
  }
  if (rho == 1.0) {
    double s = 0.0;
    for (std::size_t p = 0; p < u.size(); ++p) s += w[p] * u[p];
    return s;
  }
  double s = 0.0;
  for (std::size_t p = 0; p < u.size(); ++p)
    if (w[p] > 0.0) s += w[p] * std::pow(u[p], rho);
  if (s < 0.0) return -std::pow(-s, 1.0 / rho);  // odd integer rho
  return std::pow(s, 1.0 / rho);
}

}  // namespace internal

// Welfare of the utility vector `u`; `rank` only labels domain errors.
inline double welfare(std::span<const double> u, const WelfareSpec& spec,
                      std::size_t rank = 0) {
  switch (spec.kind) {
    case WelfareKind::kUtilitarianSum: {
      double s = 0.0;
      for (double x : u) s += x;
      return s;
    }
    case WelfareKind::kGini: {
      const auto w = internal::resolve_weights(spec, u.size());
      std::vector<double> asc(u.begin(), u.end());
      std::sort(asc.begin(), asc.end());
      double s = 0.0;
      for (std::size_t i = 0; i < asc.size(); ++i) s += w[i] * asc[i];
      return s;
    }
    case WelfareKind::kPowerMean:
      return internal::power_mean(
          u, internal::resolve_weights(spec, u.size()), spec.rho, rank);
  }
  throw std::logic_error("unknown welfare kind");
}

inline double welfare(const NormalFormGame& game, const Profile& profile,
                      const WelfareSpec& spec) {
  const std::size_t rank = game.profile_rank(profile);
  return welfare(game.payoffs(rank), spec, rank);
}

// Welfare at every profile; `shift` is added to every utility first.
inline std::vector<double> welfare_table(const NormalFormGame& game,
                                         const WelfareSpec& spec,
                                         double shift = 0.0) {
  std::vector<double> out(game.num_profiles());
  std::vector<double> u(game.num_players());
  for (std::size_t s = 0; s < out.size(); ++s) {
    for (std::size_t p = 0; p < u.size(); ++p) u[p] = game.at(p, s) + shift;
    out[s] = welfare(u, spec, s);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Adversarial values
// ---------------------------------------------------------------------------

inline double adversarial_value(const NormalFormGame& game, std::size_t player,
                                std::size_t strategy) {
  if (player >= game.num_players() || strategy >= game.strategy_count(player))
    throw std::out_of_range("adversarial_value index");
  double v = kInf;
  for (std::size_t s = 0; s < game.num_profiles(); ++s)
    if (game.strategy_of(s, player) == strategy)
      v = std::min(v, game.at(player, s));
  return v;
}

struct MaximinResult {
  double value = 0.0;
  std::size_t strategy = 0;
};

inline MaximinResult maximin(const NormalFormGame& game, std::size_t player) {
  if (player >= game.num_players()) throw std::out_of_range("player");
  MaximinResult best{-kInf, 0};
  for (std::size_t k = 0; k < game.strategy_count(player); ++k) {
    const double v = adversarial_value(game, player, k);
    if (v > best.value) best = {v, k};
  }
  return best;
}

// ---------------------------------------------------------------------------
// Lambda-stable outcomes and the anarchy gap
// ---------------------------------------------------------------------------

struct LambdaOutcome {
  double value = 0.0;
  std::size_t witness_rank = 0;
  Profile witness;
};

namespace internal {

// Minimizes sign*W + Lambda*R over profiles; sign=-1 gives the consonant
// (maximizing) variant after negation. Lambda = +inf is ordered by (R, sign*W).
inline LambdaOutcome extreme_lambda(const NormalFormGame& game,
                                    const WelfareSpec& spec, double lambda,
                                    bool use_excess, double sign) {
  if (!(lambda >= 0.0)) throw std::invalid_argument("Lambda must be >= 0");
  const auto w = welfare_table(game, spec);
  const auto r = use_excess ? excess_regret_table(game) : regret_table(game);
  std::size_t best = 0;
  if (lambda == kInf) {
    const double r_min = *std::min_element(r.begin(), r.end());
    double best_w = kInf;
    for (std::size_t s = 0; s < r.size(); ++s) {
      if (r[s] > r_min + kTol) continue;
      if (sign * w[s] < best_w) {
        best_w = sign * w[s];
        best = s;
      }
    }
    LambdaOutcome out{w[best], best, game.profile_at(best)};
    if (r_min > kTol) out.value = sign * kInf;
    return out;
  }
  double best_obj = kInf;
  for (std::size_t s = 0; s < w.size(); ++s) {
    const double obj = sign * w[s] + lambda * r[s];
    if (obj < best_obj) {
      best_obj = obj;
      best = s;
    }
  }
  return {sign * best_obj, best, game.profile_at(best)};
}

}  // namespace internal

// inf_s W(s) + Lambda R(s) (or excess regret R*). Lambda = +inf yields the
// minimum welfare over regret minimizers; the value is +inf when that
// minimum regret is positive and use_excess is false.
inline LambdaOutcome md_lambda(const NormalFormGame& game,
                               const WelfareSpec& spec, double lambda,
                               bool use_excess = false) {
  return internal::extreme_lambda(game, spec, lambda, use_excess, 1.0);
}

// sup_s W(s) - Lambda R(s) (or R*).
inline LambdaOutcome mc_lambda(const NormalFormGame& game,
                               const WelfareSpec& spec, double lambda,
                               bool use_excess = false) {
  return internal::extreme_lambda(game, spec, lambda, use_excess, -1.0);
}

// Optimal welfare minus the maximally dissonant Lambda-stable value.
inline double anarchy_gap(const NormalFormGame& game, const WelfareSpec& spec,
                          double lambda, bool use_excess = false) {
  return mc_lambda(game, spec, 0.0).value -
         md_lambda(game, spec, lambda, use_excess).value;
}

// ---------------------------------------------------------------------------
// Lipschitz registry
// ---------------------------------------------------------------------------

struct LipschitzConstant {
  double value = 0.0;
  bool discontinuous = false;
};

enum class PropertyKind {
  kRegret,
  kExcessRegret,
  kGini,
  kAdversarial,
  kPowerMean,
  kUtilitarianSum,
  kMdLambda,
  kMcLambda,
  kAnarchyGap,
};

struct PropertyDescriptor {
  PropertyKind kind = PropertyKind::kRegret;
  WelfareSpec welfare;  // power-mean, lambda and gap properties
  std::size_t num_players = 0;
  double lambda = 0.0;
  bool use_excess = false;
};

inline LipschitzConstant welfare_lipschitz(const WelfareSpec& spec,
                                           std::size_t num_players) {
  switch (spec.kind) {
    case WelfareKind::kGini:
      return {1.0, false};
    case WelfareKind::kUtilitarianSum:
      if (num_players == 0)
        throw std::invalid_argument("utilitarian welfare needs |P|");
      return {double(num_players), false};
    case WelfareKind::kPowerMean: {
      if (spec.rho >= 1.0) return {1.0, false};
      if (spec.rho >= 0.0) return {kInf, true};
      std::vector<double> w = spec.weights;
      if (w.empty()) {
        if (num_players == 0)
          throw std::invalid_argument("uniform power-mean weights need |P|");
        w.assign(num_players, 1.0 / double(num_players));
      }
      double lip = 0.0;
      for (double wp : w)
        if (wp > 0.0)
          lip = std::max(lip, spec.rho == -kInf ? 1.0
                                                : std::pow(wp, 1.0 / spec.rho));
      return {lip, false};
    }
  }
  throw std::logic_error("unknown welfare kind");
}

inline LipschitzConstant lipschitz_constant(const PropertyDescriptor& d) {
  switch (d.kind) {
    case PropertyKind::kRegret:
      return {2.0, false};
    case PropertyKind::kExcessRegret:
      return {4.0, false};
    case PropertyKind::kGini:
    case PropertyKind::kAdversarial:
      return {1.0, false};
    case PropertyKind::kPowerMean:
      return welfare_lipschitz(WelfareSpec::power_mean(d.welfare.rho,
                                                       d.welfare.weights),
                               d.num_players);
    case PropertyKind::kUtilitarianSum:
      return welfare_lipschitz(WelfareSpec::utilitarian(), d.num_players);
    case PropertyKind::kMdLambda:
    case PropertyKind::kMcLambda:
    case PropertyKind::kAnarchyGap: {
      if (!(d.lambda >= 0.0) || !std::isfinite(d.lambda))
        throw std::invalid_argument("Lipschitz constant needs finite Lambda");
      const auto lw = welfare_lipschitz(d.welfare, d.num_players);
      if (lw.discontinuous) return lw;
      if (d.kind == PropertyKind::kAnarchyGap)
        return {2.0 * (lw.value + d.lambda), false};
      return {lw.value + (d.use_excess ? 4.0 : 2.0) * d.lambda, false};
    }
  }
  throw std::logic_error("unknown property kind");
}

// Sup-norm error of a lambda-Lipschitz property under an eps-uniform
// approximation.
inline double property_error_bound(double lambda, double eps) {
  if (!std::isfinite(lambda) || lambda < 0.0)
    throw std::invalid_argument("Lipschitz constant must be finite");
  if (!(eps >= 0.0)) throw std::invalid_argument("eps must be >= 0");
  return lambda * eps;
}

// ---------------------------------------------------------------------------
// Approximately-optimal witness sets
// ---------------------------------------------------------------------------

enum class Extremum { kMin, kMax };

// {x : v(x) <= target + slack} (or the sup-side analogue), as sorted indices.
inline std::vector<std::size_t> near_target_set(std::span<const double> v,
                                                double target, double slack,
                                                Extremum side) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (side == Extremum::kMin ? v[i] <= target + slack + kTol
                               : v[i] >= target - slack - kTol)
      out.push_back(i);
  return out;
}

inline double optimum(std::span<const double> v, Extremum side) {
  if (v.empty()) return side == Extremum::kMin ? kInf : -kInf;
  return side == Extremum::kMin ? *std::min_element(v.begin(), v.end())
                                : *std::max_element(v.begin(), v.end());
}

// {x : v(x) <= min v + slack} (or the sup-side analogue), as sorted indices.
inline std::vector<std::size_t> near_optimal_set(std::span<const double> v,
                                                 double slack,
                                                 Extremum side) {
  return near_target_set(v, optimum(v, side), slack, side);
}

struct ContainmentReport {
  bool exact_in_approx = false;   // F_0(v1) subset of F_{le}(v2)
  bool approx_in_double = false;  // F_{le}(v2) subset of F_{2le}(v1)
  bool holds() const { return exact_in_approx && approx_in_double; }
};

inline ContainmentReport witness_containment_check(
    std::span<const double> values1, std::span<const double> values2,
    double lambda, double eps, Extremum side = Extremum::kMin) {
  if (values1.size() != values2.size())
    throw std::invalid_argument("value tables differ in length");
  if (!std::isfinite(lambda))
    throw std::invalid_argument("Lipschitz constant must be finite");
  // Every set is anchored at the optimum of the reference table; anchoring
  // the middle set at its own optimum admits counterexamples.
  const double slack = lambda * eps;
  const double target = optimum(values1, side);
  const auto f0 = near_target_set(values1, target, 0.0, side);
  const auto f1 = near_target_set(values2, target, slack, side);
  const auto f2 = near_target_set(values1, target, 2.0 * slack, side);
  return {std::includes(f1.begin(), f1.end(), f0.begin(), f0.end()),
          std::includes(f2.begin(), f2.end(), f1.begin(), f1.end())};
}

// ---------------------------------------------------------------------------
// Bounds on extreme equilibria and on the anarchy / stability ratios
// ---------------------------------------------------------------------------

struct IntervalBound {
  double lower = -kInf;
  double upper = kInf;
  bool empty_equilibrium_set = false;
  bool numerator_nonpositive = false;
  bool denominator_nonpositive = false;
  bool denominator_near_zero = false;

  bool valid() const {
    return !empty_equilibrium_set && !numerator_nonpositive &&
           !denominator_nonpositive && !denominator_near_zero;
  }
};

namespace internal {

struct SetExtremes {
  double min = kInf;
  double max = -kInf;
  bool empty = true;
};

inline SetExtremes extremes_over(const std::vector<double>& values,
                                 const ProfileSet& set) {
  SetExtremes e;
  for (std::size_t s : set.ranks) {
    e.min = std::min(e.min, values[s]);
    e.max = std::max(e.max, values[s]);
    e.empty = false;
  }
  return e;
}

inline double checked_ratio(double num, double den, IntervalBound& flags) {
  if (num <= 0.0) flags.numerator_nonpositive = true;
  if (den <= 0.0) flags.denominator_nonpositive = true;
  if (den > -1e-12 && den <= 1e-12) {
    flags.denominator_near_zero = true;
    return std::numeric_limits<double>::quiet_NaN();
  }
  return num / den;
}

}  // namespace internal

// Extreme equilibrium welfare of the game itself: [MD, MC] over Nash_eps.
inline IntervalBound equilibrium_welfare_range(const NormalFormGame& game,
                                               const WelfareSpec& spec,
                                               double eps = 0.0) {
  const auto nash = eps_nash_set(game, eps);
  IntervalBound b;
  if (nash.empty()) {
    b.empty_equilibrium_set = true;
    return b;
  }
  const auto e = internal::extremes_over(welfare_table(game, spec), nash);
  b.lower = e.min;
  b.upper = e.max;
  return b;
}

// Interval containing MD(u) <= MC(u) of any game u within eps of `approx`.
// `spec` must be monotone nondecreasing in utilities.
inline IntervalBound extreme_eq_bounds(const NormalFormGame& approx, double eps,
                                       const WelfareSpec& spec) {
  if (!(eps >= 0.0)) throw std::invalid_argument("eps must be >= 0");
  IntervalBound b;
  const auto nash = eps_nash_set(approx, 2.0 * eps);
  if (nash.empty()) {
    b.empty_equilibrium_set = true;
    return b;
  }
  b.lower = internal::extremes_over(welfare_table(approx, spec, -eps), nash).min;
  b.upper = internal::extremes_over(welfare_table(approx, spec, eps), nash).max;
  return b;
}

struct ExtremeBounds {
  IntervalBound md;  // maximally dissonant equilibrium welfare
  IntervalBound mc;  // maximally consonant equilibrium welfare
};

// Tightened bounds under gamma-stability: the welfare of every
// alpha-equilibrium is within alpha*gamma of an exact equilibrium's.
inline ExtremeBounds extreme_eq_bounds_refined(const NormalFormGame& approx,
                                               double eps, double gamma,
                                               const WelfareSpec& spec) {
  if (!(eps >= 0.0)) throw std::invalid_argument("eps must be >= 0");
  if (!(gamma >= 0.0)) throw std::invalid_argument("gamma must be >= 0");
  ExtremeBounds out;
  const auto loose = extreme_eq_bounds(approx, eps, spec);
  const auto nash = eps_nash_set(approx, 0.0);
  out.md = loose;
  out.mc = loose;
  if (nash.empty()) {
    out.md.empty_equilibrium_set = out.mc.empty_equilibrium_set = true;
    return out;
  }
  const auto up = internal::extremes_over(welfare_table(approx, spec, eps), nash);
  const auto down =
      internal::extremes_over(welfare_table(approx, spec, -eps), nash);
  out.md.upper = up.min + 2.0 * gamma * eps;
  out.mc.lower = down.max - 2.0 * gamma * eps;
  return out;
}

struct RatioBounds {
  IntervalBound anarchy_ratio;
  IntervalBound stability_ratio;
};

// Bounds 1 <= SR(u) <= AR(u) from an eps-approximation. With `gamma`, the
// refined stability-assumption bounds are intersected in.
inline RatioBounds ar_sr_bounds(const NormalFormGame& approx, double eps,
                                const WelfareSpec& spec,
                                std::optional<double> gamma = std::nullopt) {
  if (!(eps >= 0.0)) throw std::invalid_argument("eps must be >= 0");
  RatioBounds out;
  const auto nash2 = eps_nash_set(approx, 2.0 * eps);
  if (nash2.empty()) {
    out.anarchy_ratio.empty_equilibrium_set = true;
    out.stability_ratio.empty_equilibrium_set = true;
    return out;
  }
  const auto w_up = welfare_table(approx, spec, eps);
  const auto w_down = welfare_table(approx, spec, -eps);
  const double best_up = *std::max_element(w_up.begin(), w_up.end());
  const double best_down = *std::max_element(w_down.begin(), w_down.end());

  IntervalBound flags;
  const double upper = internal::checked_ratio(
      best_up, internal::extremes_over(w_down, nash2).min, flags);
  double lower = internal::checked_ratio(
      best_down, internal::extremes_over(w_up, nash2).max, flags);
  if (!std::isnan(lower)) lower = std::max(1.0, lower);

  out.anarchy_ratio = flags;
  out.anarchy_ratio.lower = lower;
  out.anarchy_ratio.upper = upper;
  out.stability_ratio = out.anarchy_ratio;

  if (gamma) {
    if (!(*gamma >= 0.0)) throw std::invalid_argument("gamma must be >= 0");
    const auto nash = eps_nash_set(approx, 0.0);
    if (nash.empty()) {
      out.anarchy_ratio.empty_equilibrium_set = true;
      out.stability_ratio.empty_equilibrium_set = true;
      return out;
    }
    const double slack = 2.0 * *gamma * eps;
    const double ar_lo = internal::checked_ratio(
        best_down, internal::extremes_over(w_up, nash).min + slack,
        out.anarchy_ratio);
    const double sr_hi = internal::checked_ratio(
        best_up, internal::extremes_over(w_down, nash).max - slack,
        out.stability_ratio);
    if (!std::isnan(ar_lo))
      out.anarchy_ratio.lower = std::max(out.anarchy_ratio.lower, ar_lo);
    if (!std::isnan(sr_hi))
      out.stability_ratio.upper = std::min(out.stability_ratio.upper, sr_hi);
  }
  return out;
}

// Pure-price-of-anarchy estimators on a single approximation, with
// utilitarian welfare.
struct PpoaEstimates {
  double lower = 0.0;  // L
  double upper = 0.0;  // U
  double mean = 0.0;   // M_x
  IntervalBound lower_flags;
  IntervalBound upper_flags;
  IntervalBound mean_flags;
};

inline PpoaEstimates ppoa_estimators(const NormalFormGame& approx, double eps,
                                     double x) {
  if (!(eps >= 0.0) || !(x >= 0.0))
    throw std::invalid_argument("eps and x must be >= 0");
  const auto w = welfare_table(approx, WelfareSpec::utilitarian());
  const double best = *std::max_element(w.begin(), w.end());
  const double slack = double(approx.num_players()) * eps;
  const auto nash2 = eps_nash_set(approx, 2.0 * eps);
  const auto nash_x = eps_nash_set(approx, x);
  PpoaEstimates out;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  if (nash2.empty()) {
    out.lower_flags.empty_equilibrium_set = true;
    out.upper_flags.empty_equilibrium_set = true;
    out.lower = out.upper = nan;
  } else {
    const auto e = internal::extremes_over(w, nash2);
    out.lower = internal::checked_ratio(best - slack, e.max + slack,
                                        out.lower_flags);
    out.upper = internal::checked_ratio(best + slack, e.min - slack,
                                        out.upper_flags);
  }
  if (nash_x.empty()) {
    out.mean_flags.empty_equilibrium_set = true;
    out.mean = nan;
  } else {
    out.mean = internal::checked_ratio(
        best, internal::extremes_over(w, nash_x).min, out.mean_flags);
  }
  return out;
}

// The two-game family whose equilibrium welfare jumps by c while the games
// stay 2*gamma apart in sup norm.
struct CounterexampleReport {
  double distance = 0.0;
  double mc_gap = 0.0;
  double md_gap = 0.0;
  IntervalBound negative;  // [MD, MC] of the game at -gamma
  IntervalBound positive;  // [MD, MC] of the game at +gamma
};

inline CounterexampleReport counterexample_gap_demo(double gamma,
                                                    double c_param) {
  if (!(gamma > 0.0 && gamma < 1.0))
    throw std::invalid_argument("gamma must lie in (0, 1)");
  if (!(c_param >= 0.0)) throw std::invalid_argument("c must be >= 0");
  const auto neg = gen_counterexample(-gamma, c_param);
  const auto pos = gen_counterexample(gamma, c_param);
  const auto spec = WelfareSpec::utilitarian();
  CounterexampleReport r;
  r.distance = linf_distance(neg, pos);
  r.negative = equilibrium_welfare_range(neg, spec);
  r.positive = equilibrium_welfare_range(pos, spec);
  r.mc_gap = std::abs(r.negative.upper - r.positive.upper);
  r.md_gap = std::abs(r.negative.lower - r.positive.lower);
  return r;
}

}  // namespace egta

#endif  // EGTA_PROPERTIES_HPP_
