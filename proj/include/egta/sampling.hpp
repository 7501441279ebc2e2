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

// Uniform estimation of a simulated game: global sampling (GS) with a fixed
// sample size, and progressive sampling with pruning (PSP), which grows a
// shared condition list geometrically and stops querying profiles whose
// utilities are already pinned down.

#ifndef EGTA_SAMPLING_HPP_
#define EGTA_SAMPLING_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "egta/concentration.hpp"
#include "egta/nfg.hpp"
#include "egta/oracle.hpp"
#include "egta/parallel.hpp"
#include "egta/rng.hpp"

namespace egta {

struct Schedule {
  double beta = 2.0;
  std::size_t length = 1;  // T
  double log_term = 0.0;   // ln(3 T |Gamma| / delta)
  double alpha = 0.0;
  double omega = 0.0;
  std::vector<std::uint64_t> sizes;  // m_1 < ... < m_T
  // Condition count of the fallback round: max(m_T, ceil(omega)).
  std::uint64_t final_size = 0;
  // Set when eps is too coarse for even one geometric step.
  bool clamped = false;
};

inline Schedule build_schedule(double eps, double delta, double c, double beta,
                               std::size_t game_size) {
  internal::require_positive(eps, "eps");
  internal::require_delta(delta);
  internal::require_positive(c, "c");
  if (!(beta > 1.0)) throw std::invalid_argument("beta must be > 1");
  if (game_size == 0) throw std::invalid_argument("game size must be >= 1");
  Schedule s;
  s.beta = beta;
  const double ratio = 3.0 * c / (4.0 * eps);
  // The small nudge keeps exact powers of beta from flooring one short.
  const double t = ratio > 1.0 ? std::floor(std::log(ratio) / std::log(beta) +
                                            1e-9)
                               : 0.0;
  s.clamped = t < 1.0;
  s.length = s.clamped ? 1 : std::size_t(t);
  s.log_term = std::log(3.0 * double(s.length) * double(game_size) / delta);
  s.alpha = 2.0 * c / (3.0 * eps) * s.log_term;
  s.omega = c * c / (2.0 * eps * eps) * s.log_term;
  std::uint64_t prev = 1;
  for (std::size_t i = 1; i <= s.length; ++i) {
    auto m = std::uint64_t(std::ceil(s.alpha * std::pow(beta, double(i))));
    m = std::max(m, prev + 1);
    s.sizes.push_back(m);
    prev = m;
  }
  s.final_size = std::max(s.sizes.back(), std::uint64_t(std::ceil(s.omega)));
  return s;
}

// Welford's streaming mean and sum of squared deviations.
struct RunningMoments {
  std::uint64_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    ++count;
    const double delta = x - mean;
    mean += delta / double(count);
    m2 += delta * (x - mean);
  }
  // Unbiased sample variance; 0 below two observations.
  double variance() const {
    return count < 2 ? 0.0 : std::max(0.0, m2 / double(count - 1));
  }
};

class EmpiricalAccumulator {
 public:
  void ingest(double x) {
    if (frozen_) throw std::logic_error("ingest into a frozen accumulator");
    moments_.add(x);
  }
  void freeze(double radius) {
    if (frozen_) throw std::logic_error("accumulator already frozen");
    frozen_ = true;
    estimate_ = moments_.mean;
    radius_ = radius;
  }

  std::uint64_t count() const { return moments_.count; }
  double mean() const { return moments_.mean; }
  double variance() const { return moments_.variance(); }
  bool frozen() const { return frozen_; }
  double estimate() const { return frozen_ ? estimate_ : moments_.mean; }
  double radius() const { return radius_; }

 private:
  RunningMoments moments_;
  bool frozen_ = false;
  double estimate_ = 0.0;
  double radius_ = 0.0;
};

enum class BoundKind {
  kHoeffdingBonferroni,
  kUniformEmpiricalBennett,
  kPerIndexEmpiricalBennett,
};

inline BoundKind parse_bound_kind(const std::string& s) {
  if (s == "hoeffding_bonferroni" || s == "hoeffding")
    return BoundKind::kHoeffdingBonferroni;
  if (s == "uniform_empirical_bennett" || s == "uniform_eb")
    return BoundKind::kUniformEmpiricalBennett;
  if (s == "per_index_empirical_bennett" || s == "per_index_eb")
    return BoundKind::kPerIndexEmpiricalBennett;
  throw std::invalid_argument("unknown bound kind: " + s);
}

inline const char* to_string(BoundKind k) {
  switch (k) {
    case BoundKind::kHoeffdingBonferroni:
      return "hoeffding_bonferroni";
    case BoundKind::kUniformEmpiricalBennett:
      return "uniform_empirical_bennett";
    case BoundKind::kPerIndexEmpiricalBennett:
      return "per_index_empirical_bennett";
  }
  return "?";
}

struct EstimationConfig {
  double eps = 0.1;
  double delta = 0.05;
  double beta = 2.0;
  // Range width; 0 takes the oracle's declared range.
  double c = 0.0;
  BoundKind bound_kind = BoundKind::kHoeffdingBonferroni;
  std::uint64_t master_seed = 0;
  std::size_t threads = 1;
};

struct IterationLog {
  std::size_t t = 0;
  std::uint64_t m_t = 0;
  std::size_t active_indices = 0;  // after pruning at m_t
  std::size_t active_profiles = 0;
  std::uint64_t cumulative_data = 0;
  std::uint64_t cumulative_queries = 0;
};

struct RunReport {
  std::string algorithm;
  std::vector<std::size_t> strategy_counts;
  double c = 0.0;
  double delta = 0.0;
  double eps = 0.0;  // target for PSP; unused by GS
  // Player-major, one entry per utility index. Indices outside the
  // estimated set carry estimated = 0 and NaN estimate/radius.
  std::vector<double> estimates;
  std::vector<double> radii;
  std::vector<double> variances;  // empirical variance at freeze
  std::vector<std::uint8_t> estimated;
  std::uint64_t data_complexity = 0;
  std::uint64_t query_complexity = 0;
  std::vector<std::uint64_t> profile_queries;
  std::vector<IterationLog> iterations;
  std::optional<Schedule> schedule;
  bool success = false;

  // Largest radius over estimated indices: the achieved uniform error.
  double max_radius() const {
    double r = 0.0;
    for (std::size_t i = 0; i < radii.size(); ++i)
      if (estimated[i]) r = std::max(r, radii[i]);
    return r;
  }
};

// Raised when the simulator throws; carries the failing query.
class OracleError : public std::runtime_error {
 public:
  OracleError(std::size_t rank, std::uint64_t condition_index,
              const std::string& what)
      : std::runtime_error("oracle failed at profile rank " +
                           std::to_string(rank) + ", condition " +
                           std::to_string(condition_index) + ": " + what),
        rank_(rank),
        condition_index_(condition_index) {}
  std::size_t rank() const { return rank_; }
  std::uint64_t condition_index() const { return condition_index_; }

 private:
  std::size_t rank_;
  std::uint64_t condition_index_;
};

namespace internal {

// Queries each listed profile on conditions [from, to) of the stream and
// feeds the unfrozen, wanted accumulators of that profile, in stream order.
inline void query_profiles(const ConditionalGame& oracle,
                           const std::vector<std::size_t>& ranks,
                           std::uint64_t from, std::uint64_t to,
                           std::uint64_t seed, std::size_t threads,
                           const std::vector<std::uint8_t>& wanted,
                           std::vector<EmpiricalAccumulator>& acc) {
  const std::size_t players = oracle.num_players();
  const std::size_t profiles = oracle.num_profiles();
  parallel_for(ranks.size(), threads, [&](std::size_t k) {
    const std::size_t s = ranks[k];
    std::vector<double> out(players);
    for (std::uint64_t j = from; j < to; ++j) {
      try {
        oracle.evaluate(s, condition_at(seed, j), out);
      } catch (const std::exception& e) {
        throw OracleError(s, j, e.what());
      }
      for (std::size_t p = 0; p < players; ++p) {
        const std::size_t i = p * profiles + s;
        if (wanted[i] && !acc[i].frozen()) acc[i].ingest(out[p]);
      }
    }
  });
}

inline void check_config(const EstimationConfig& config, double c) {
  internal::require_delta(config.delta);
  internal::require_positive(c, "c");
}

}  // namespace internal

// Global sampling: m shared conditions, every profile queried on each.
inline RunReport gs(const ConditionalGame& oracle, std::uint64_t m,
                    const EstimationConfig& config) {
  const double c = config.c > 0.0 ? config.c : oracle.range();
  internal::check_config(config, c);
  const bool variance_kind =
      config.bound_kind != BoundKind::kHoeffdingBonferroni;
  if (m < (variance_kind ? 2u : 1u))
    throw std::invalid_argument(variance_kind
                                    ? "empirical Bennett GS needs m >= 2"
                                    : "GS needs m >= 1");
  const std::size_t n = oracle.num_indices();
  const std::size_t profiles = oracle.num_profiles();
  std::vector<EmpiricalAccumulator> acc(n);
  std::vector<std::uint8_t> wanted(n, 1);
  std::vector<std::size_t> ranks(profiles);
  for (std::size_t s = 0; s < profiles; ++s) ranks[s] = s;
  internal::query_profiles(oracle, ranks, 0, m, config.master_seed,
                           config.threads, wanted, acc);

  RunReport r;
  r.algorithm = std::string("gs/") + to_string(config.bound_kind);
  r.strategy_counts = oracle.space().strategy_counts();
  r.c = c;
  r.delta = config.delta;
  r.eps = config.eps;
  r.estimates.resize(n);
  r.radii.resize(n);
  r.variances.resize(n);
  r.estimated = wanted;
  const double md = double(m);
  const double game_size = double(n);
  double vmax = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    r.estimates[i] = acc[i].mean();
    r.variances[i] = acc[i].variance();
    vmax = std::max(vmax, r.variances[i]);
  }
  const double eb_delta = config.delta / (3.0 * game_size);
  switch (config.bound_kind) {
    case BoundKind::kHoeffdingBonferroni: {
      const double h = hoeffding_radius(md, config.delta / game_size, c);
      std::fill(r.radii.begin(), r.radii.end(), h);
      break;
    }
    case BoundKind::kUniformEmpiricalBennett: {
      const double e = empirical_bennett_radii(md, vmax, eb_delta, c).eps_mu;
      std::fill(r.radii.begin(), r.radii.end(), e);
      break;
    }
    case BoundKind::kPerIndexEmpiricalBennett:
      for (std::size_t i = 0; i < n; ++i)
        r.radii[i] =
            empirical_bennett_radii(md, r.variances[i], eb_delta, c).eps_mu;
      break;
  }
  r.data_complexity = m;
  r.profile_queries.assign(profiles, m);
  r.query_complexity = m * profiles;
  r.iterations.push_back({1, m, 0, 0, m, r.query_complexity});
  r.success = true;
  return r;
}

// Progressive sampling with pruning over the flat utility indices in
// `index_set` (player-major positions).
inline RunReport psp(const ConditionalGame& oracle,
                     const std::vector<std::size_t>& index_set,
                     const EstimationConfig& config) {
  const double c = config.c > 0.0 ? config.c : oracle.range();
  internal::check_config(config, c);
  if (index_set.empty()) throw std::invalid_argument("index set is empty");
  const std::size_t n = oracle.num_indices();
  const std::size_t profiles = oracle.num_profiles();

  std::vector<std::uint8_t> wanted(n, 0);
  std::vector<std::size_t> active_per_profile(profiles, 0);
  std::size_t active = 0;
  for (std::size_t i : index_set) {
    if (i >= n) throw std::out_of_range("index set entry out of range");
    if (wanted[i]) continue;
    wanted[i] = 1;
    ++active_per_profile[i % profiles];
    ++active;
  }

  const Schedule sched =
      build_schedule(config.eps, config.delta, c, config.beta, active);
  const double delta_eff =
      config.delta / (3.0 * double(sched.length) * double(active));

  RunReport r;
  r.algorithm = "psp";
  r.strategy_counts = oracle.space().strategy_counts();
  r.c = c;
  r.delta = config.delta;
  r.eps = config.eps;
  r.schedule = sched;
  r.profile_queries.assign(profiles, 0);

  std::vector<EmpiricalAccumulator> acc(n);
  std::uint64_t drawn = 0;

  auto advance = [&](std::uint64_t target) {
    std::vector<std::size_t> ranks;
    for (std::size_t s = 0; s < profiles; ++s)
      if (active_per_profile[s] > 0) ranks.push_back(s);
    internal::query_profiles(oracle, ranks, drawn, target, config.master_seed,
                             config.threads, wanted, acc);
    for (std::size_t s : ranks) r.profile_queries[s] = target;
    r.query_complexity += (target - drawn) * ranks.size();
    drawn = target;
  };

  auto prune = [&](std::uint64_t m, bool force) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!wanted[i] || acc[i].frozen()) continue;
      const BennettRadii b =
          empirical_bennett_radii(double(m), acc[i].variance(), delta_eff, c);
      if (force || b.effective_radius <= config.eps) {
        acc[i].freeze(b.effective_radius);
        --active_per_profile[i % profiles];
        --active;
      }
    }
  };

  auto record = [&](std::size_t t) {
    std::size_t live_profiles = 0;
    for (std::size_t k : active_per_profile) live_profiles += k > 0;
    r.iterations.push_back(
        {t, drawn, active, live_profiles, drawn, r.query_complexity});
  };

  for (std::size_t t = 1; t <= sched.length && active > 0; ++t) {
    advance(sched.sizes[t - 1]);
    prune(drawn, false);
    record(t);
  }
  if (active > 0 && sched.final_size > drawn) {
    advance(sched.final_size);
    prune(drawn, false);
    record(sched.length + 1);
  }
  r.success = active == 0;
  // Unreachable when the Hoeffding cap behaves, but never leave an index
  // unreported.
  if (active > 0) prune(drawn, true);

  r.data_complexity = drawn;
  r.estimates.assign(n, std::nan(""));
  r.radii.assign(n, std::nan(""));
  r.variances.assign(n, std::nan(""));
  r.estimated = wanted;
  for (std::size_t i = 0; i < n; ++i) {
    if (!wanted[i]) continue;
    r.estimates[i] = acc[i].estimate();
    r.radii[i] = acc[i].radius();
    r.variances[i] = acc[i].variance();
  }
  return r;
}

inline RunReport psp(const ConditionalGame& oracle,
                     const EstimationConfig& config) {
  std::vector<std::size_t> all(oracle.num_indices());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return psp(oracle, all, config);
}

// True iff every estimated index lies within eps of the truth.
inline bool verify_uniform(const RunReport& report,
                           const NormalFormGame& truth, double eps) {
  if (report.strategy_counts != truth.strategy_counts())
    throw std::invalid_argument("report and game shapes differ");
  const auto u = truth.utilities();
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (!report.estimated[i]) continue;
    if (!(std::abs(report.estimates[i] - u[i]) <= eps + kTol)) return false;
  }
  return true;
}

// The estimated game as a NormalFormGame; unestimated indices read 0.
inline NormalFormGame estimated_game(const RunReport& report) {
  std::vector<double> u(report.estimates.size());
  for (std::size_t i = 0; i < u.size(); ++i)
    u[i] = report.estimated[i] ? report.estimates[i] : 0.0;
  double range = report.c;
  for (double x : u) range = std::max(range, 2.0 * std::abs(x));
  return NormalFormGame(report.strategy_counts, std::move(u), range);
}

}  // namespace egta

#endif  // EGTA_SAMPLING_HPP_
