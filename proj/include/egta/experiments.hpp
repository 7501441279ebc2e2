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

// Desk-scale experiment harness. Every experiment reads a JSON object of
// overrides, derives per-replicate seeds from the master seed, and returns a
// CSV table whose rows do not depend on the thread count.

#ifndef EGTA_EXPERIMENTS_HPP_
#define EGTA_EXPERIMENTS_HPP_

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "egta/concentration.hpp"
#include "egta/game_file.hpp"
#include "egta/generators.hpp"
#include "egta/nfg.hpp"
#include "egta/oracle.hpp"
#include "egta/parallel.hpp"
#include "egta/properties.hpp"
#include "egta/sampling.hpp"

namespace egta {

inline constexpr int kCsvSchemaVersion = 1;

inline std::string format_number(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

inline std::string format_number(std::uint64_t x) { return std::to_string(x); }

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::string str() const {
    std::ostringstream out;
    auto line = [&](const std::vector<std::string>& cells) {
      for (std::size_t i = 0; i < cells.size(); ++i)
        out << (i ? "," : "") << cells[i];
      out << '\n';
    };
    line(header);
    for (const auto& r : rows) line(r);
    return out.str();
  }
};

// Typed access to an experiment's override object. Unknown keys are
// rejected so a typo cannot silently fall back to a default.
class ConfigReader {
 public:
  ConfigReader(const Json& j, std::string path)
      : j_(j.is_null() ? Json::object() : j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(path_, "expected an object");
  }

  template <typename T>
  T get(const std::string& key, T fallback) {
    seen_.insert(key);
    if (!j_.contains(key)) return fallback;
    try {
      return j_.at(key).get<T>();
    } catch (const Json::exception& e) {
      throw ConfigError(path_ + "." + key, e.what());
    }
  }

  double positive(const std::string& key, double fallback) {
    const double v = get(key, fallback);
    if (!(v > 0.0)) throw ConfigError(path_ + "." + key, "must be > 0");
    return v;
  }

  double probability(const std::string& key, double fallback) {
    const double v = get(key, fallback);
    if (!(v > 0.0 && v < 1.0))
      throw ConfigError(path_ + "." + key, "must lie in (0, 1)");
    return v;
  }

  std::size_t count(const std::string& key, std::size_t fallback) {
    const auto v = get<long long>(key, (long long)fallback);
    if (v < 1) throw ConfigError(path_ + "." + key, "must be >= 1");
    return std::size_t(v);
  }

  void finish() const {
    for (const auto& [k, v] : j_.items())
      if (!seen_.count(k)) throw ConfigError(path_ + "." + k, "unknown key");
  }

 private:
  Json j_;
  std::string path_;
  std::set<std::string> seen_;
};

namespace internal {

inline std::vector<double> grid(double lo, double hi, double step) {
  std::vector<double> out;
  const long n = std::lround((hi - lo) / step);
  for (long i = 0; i <= n; ++i) out.push_back(lo + double(i) * step);
  return out;
}

inline std::string schema() { return std::to_string(kCsvSchemaVersion); }

// All-subsets congestion game with seeded affine costs, mapped into
// (-u0/2, u0/2).
inline NormalFormGame congestion_base(std::size_t players,
                                      std::size_t facilities, double u0,
                                      std::uint64_t seed) {
  return rescale_into(
      congestion_game(all_subsets_structure(players, facilities),
                      random_affine_costs(facilities, seed)),
      u0);
}

}  // namespace internal

// Proportion of pure profiles that are eps-Nash, per sampled game.
inline CsvTable eps_nash_experiment(const Json& cfg_json, std::uint64_t seed,
                                    std::size_t threads) {
  ConfigReader cfg(cfg_json, "$");
  const std::size_t games = cfg.count("games", 20);
  const auto generators = cfg.get<std::vector<std::string>>(
      "generators", {"rz", "rc"});
  const auto eps = cfg.get<std::vector<double>>(
      "eps", internal::grid(0.0, 1.0, 0.05));
  const std::size_t k = cfg.count("rz_k", 18);
  const double u0 = cfg.positive("u0", 2.0);
  const std::size_t players = cfg.count("rc_players", 3);
  const std::size_t facilities = cfg.count("rc_facilities", 3);
  cfg.finish();
  for (const auto& g : generators)
    if (g != "rz" && g != "rc")
      throw ConfigError("$.generators", "unknown generator '" + g + "'");
  for (double e : eps)
    if (!(e >= 0.0)) throw ConfigError("$.eps", "eps values must be >= 0");

  CsvTable t;
  t.header = {"schema_version", "generator", "game_id", "eps", "proportion"};
  for (std::size_t gi = 0; gi < generators.size(); ++gi) {
    std::vector<std::vector<double>> props(games);
    parallel_for(games, threads, [&](std::size_t i) {
      const auto s = derive_seed(seed, gi * 1'000'000 + i);
      const auto game = generators[gi] == "rz"
                            ? gen_random_zero_sum(k, u0, s)
                            : internal::congestion_base(players, facilities,
                                                        u0, s);
      const auto r = regret_table(game);
      for (double e : eps) {
        std::size_t hits = 0;
        for (double x : r) hits += x <= e + kTol;
        props[i].push_back(double(hits) / double(r.size()));
      }
    });
    for (std::size_t i = 0; i < games; ++i)
      for (std::size_t e = 0; e < eps.size(); ++e)
        t.rows.push_back({internal::schema(), generators[gi],
                          std::to_string(i), format_number(eps[e]),
                          format_number(props[i][e])});
  }
  return t;
}

// Sup-norm error of power-mean welfare under eps-perturbations of a
// positive-utility congestion game.
inline CsvTable welfare_error_experiment(const Json& cfg_json,
                                         std::uint64_t seed,
                                         std::size_t threads) {
  ConfigReader cfg(cfg_json, "$");
  const std::size_t draws = cfg.count("perturbations", 100);
  const double eps = cfg.positive("eps", 0.02);
  const auto rhos =
      cfg.get<std::vector<double>>("rho", internal::grid(-10.0, 10.0, 0.5));
  const double u0 = cfg.positive("u0", 2.0);
  const double floor_u = cfg.positive("min_utility", 0.05);
  const std::size_t players = cfg.count("players", 3);
  const std::size_t facilities = cfg.count("facilities", 3);
  cfg.finish();
  if (floor_u <= eps)
    throw ConfigError("$.min_utility", "must exceed eps to stay positive");

  const auto raw =
      internal::congestion_base(players, facilities, u0, derive_seed(seed, 0));
  const auto u = raw.utilities();
  const auto base =
      shift_utilities(raw, floor_u - *std::min_element(u.begin(), u.end()));

  std::vector<std::vector<double>> truth(rhos.size());
  for (std::size_t r = 0; r < rhos.size(); ++r)
    truth[r] = welfare_table(base, WelfareSpec::power_mean(rhos[r]));

  std::vector<std::vector<double>> err(draws, std::vector<double>(rhos.size()));
  parallel_for(draws, threads, [&](std::size_t j) {
    const auto g = perturb_uniform(base, eps, derive_seed(seed, 1 + j));
    for (std::size_t r = 0; r < rhos.size(); ++r) {
      const auto w = welfare_table(g, WelfareSpec::power_mean(rhos[r]));
      double sup = 0.0;
      for (std::size_t s = 0; s < w.size(); ++s)
        sup = std::max(sup, std::abs(w[s] - truth[r][s]));
      err[j][r] = sup;
    }
  });

  CsvTable t;
  t.header = {"schema_version", "rho",        "mean_sup_error",
              "max_sup_error",  "lipschitz", "error_bound"};
  for (std::size_t r = 0; r < rhos.size(); ++r) {
    double mean = 0.0, worst = 0.0;
    for (std::size_t j = 0; j < draws; ++j) {
      mean += err[j][r];
      worst = std::max(worst, err[j][r]);
    }
    mean /= double(draws);
    const auto lip =
        welfare_lipschitz(WelfareSpec::power_mean(rhos[r]), players);
    t.rows.push_back({internal::schema(), format_number(rhos[r]),
                      format_number(mean), format_number(worst),
                      lip.discontinuous ? "inf" : format_number(lip.value),
                      lip.discontinuous ? "inf"
                                        : format_number(lip.value * eps)});
  }
  return t;
}

// PSP active-profile proportions per iteration under different noise-scale
// regimes, with Bennett (lower) and PSP (upper) envelopes.
inline CsvTable variance_pruning_experiment(const Json& cfg_json,
                                            std::uint64_t seed,
                                            std::size_t threads) {
  ConfigReader cfg(cfg_json, "$");
  const std::size_t k = cfg.count("k", 18);
  const double u0 = cfg.positive("u0", 2.0);
  const double d = cfg.positive("d", 20.0);
  const auto regimes = cfg.get<std::vector<std::vector<double>>>(
      "regimes", {{0.5, 3.0}, {1.5, 3.0}, {5.0, 0.5}});
  const std::size_t games = cfg.count("games", 1);
  const double eps = cfg.positive("eps", 0.5);
  const double delta = cfg.probability("delta", 0.05);
  const double beta = cfg.positive("beta", 1.1);
  cfg.finish();
  for (const auto& r : regimes)
    if (r.size() != 2 || !(r[0] > 0.0) || !(r[1] > 0.0))
      throw ConfigError("$.regimes", "each regime is [alpha, beta] > 0");
  if (!(beta > 1.0)) throw ConfigError("$.beta", "must be > 1");

  struct Job {
    std::size_t regime, game;
  };
  std::vector<Job> jobs;
  for (std::size_t r = 0; r < regimes.size(); ++r)
    for (std::size_t g = 0; g < games; ++g) jobs.push_back({r, g});
  std::vector<std::vector<std::vector<std::string>>> out(jobs.size());

  parallel_for(jobs.size(), threads, [&](std::size_t j) {
    const auto [r, g] = jobs[j];
    const auto base = gen_random_zero_sum(k, u0, derive_seed(seed, g));
    const AdditiveNoiseGame oracle(
        base, {d, regimes[r][0], regimes[r][1], {}},
        derive_seed(seed, 1'000'000 + 1000 * r + g));
    EstimationConfig ec;
    ec.eps = eps;
    ec.delta = delta;
    ec.beta = beta;
    ec.master_seed = derive_seed(seed, 2'000'000 + g);
    const auto report = psp(oracle, ec);

    const double c = oracle.range();
    const std::size_t profiles = oracle.num_profiles();
    const double size = double(oracle.num_indices());
    const auto vmax =
        profile_max_variances(oracle.space(), *oracle.true_variances());
    std::vector<double> lo(profiles), hi(profiles);
    for (std::size_t s = 0; s < profiles; ++s) {
      lo[s] = bennett_sample_complexity(eps, delta / size, c, vmax[s]);
      hi[s] = psp_profile_query_bound(eps, delta, c, vmax[s], beta,
                                      double(report.schedule->length), size)
                  .exact;
    }
    const std::string name = "beta_" + format_number(regimes[r][0]) + "_" +
                             format_number(regimes[r][1]);
    std::size_t active_before = profiles;
    for (const auto& it : report.iterations) {
      const double m = double(it.m_t);
      std::size_t n_lo = 0, n_hi = 0;
      for (std::size_t s = 0; s < profiles; ++s) {
        n_lo += lo[s] >= m;
        n_hi += hi[s] >= m;
      }
      out[j].push_back({internal::schema(), name, std::to_string(g),
                        std::to_string(it.t), format_number(it.m_t),
                        format_number(double(active_before) / double(profiles)),
                        format_number(double(n_lo) / double(profiles)),
                        format_number(double(n_hi) / double(profiles)),
                        format_number(it.cumulative_queries)});
      active_before = it.active_profiles;
    }
  });

  CsvTable t;
  t.header = {"schema_version",    "regime",      "game_id",
              "iteration",         "samples",     "active_proportion",
              "lower_bound",       "upper_bound", "cumulative_queries"};
  for (auto& rows : out)
    for (auto& row : rows) t.rows.push_back(std::move(row));
  return t;
}

// Achieved error against data and query cost for GS (Hoeffding, Bennett
// with known variance, uniform empirical Bennett) and PSP, plus the
// corresponding a-priori complexity curves.
inline CsvTable psp_vs_gs_experiment(const Json& cfg_json, std::uint64_t seed,
                                     std::size_t threads) {
  ConfigReader cfg(cfg_json, "$");
  const std::size_t players = cfg.count("players", 3);
  const std::size_t facilities = cfg.count("facilities", 3);
  const double u0 = cfg.positive("u0", 2.0);
  const double d = cfg.positive("d", 20.0);
  const double sa = cfg.positive("scale_alpha", 1.5);
  const double sb = cfg.positive("scale_beta", 3.0);
  const double delta = cfg.probability("delta", 0.1);
  const double beta = cfg.positive("beta", 1.1);
  const auto targets =
      cfg.get<std::vector<double>>("eps_targets", {1.0, 2.0, 4.0});
  const auto sizes = cfg.get<std::vector<std::uint64_t>>(
      "gs_m", {100, 300, 1000, 3000, 10000});
  const std::size_t runs = cfg.count("runs", 3);
  cfg.finish();
  if (!(beta > 1.0)) throw ConfigError("$.beta", "must be > 1");
  for (double e : targets)
    if (!(e > 0.0)) throw ConfigError("$.eps_targets", "must be > 0");
  for (auto m : sizes)
    if (m < 2) throw ConfigError("$.gs_m", "sample sizes must be >= 2");

  const auto base =
      internal::congestion_base(players, facilities, u0, derive_seed(seed, 0));
  const AdditiveNoiseGame oracle(base, {d, sa, sb, {}}, derive_seed(seed, 1));
  const double c = oracle.range();
  const double size = double(oracle.num_indices());
  const double profiles = double(oracle.num_profiles());
  const auto v = *oracle.true_variances();
  const double vmax = *std::max_element(v.begin(), v.end());
  const auto vprof = profile_max_variances(oracle.space(), v);

  CsvTable t;
  t.header = {"schema_version", "algorithm", "run",    "target_or_m",
              "eps_achieved",   "data",      "queries"};
  auto row = [&](const std::string& alg, std::size_t run, double x, double e,
                 double data, double queries) {
    t.rows.push_back({internal::schema(), alg, std::to_string(run),
                      format_number(x), format_number(e), format_number(data),
                      format_number(queries)});
  };

  for (auto m : sizes) {
    const double md = double(m);
    row("GS-H", 0, md, hoeffding_radius(md, delta / size, c), md,
        md * profiles);
    // Smallest eps whose exact Bennett sample size fits in m.
    double lo = 0.0, hi = c;
    for (int it = 0; it < 200; ++it) {
      const double mid = (lo + hi) / 2;
      (bennett_sample_complexity(mid, delta / size, c, vmax) <= md ? hi : lo) =
          mid;
    }
    row("GS-B", 0, md, hi, md, md * profiles);
  }

  struct Job {
    bool is_psp;
    std::size_t setting, run;
  };
  std::vector<Job> jobs;
  for (std::size_t i = 0; i < sizes.size(); ++i)
    for (std::size_t r = 0; r < runs; ++r) jobs.push_back({false, i, r});
  for (std::size_t i = 0; i < targets.size(); ++i)
    for (std::size_t r = 0; r < runs; ++r) jobs.push_back({true, i, r});
  std::vector<RunReport> reports(jobs.size());
  parallel_for(jobs.size(), threads, [&](std::size_t j) {
    EstimationConfig ec;
    ec.delta = delta;
    ec.beta = beta;
    ec.master_seed = derive_seed(seed, 100 + jobs[j].run);
    if (jobs[j].is_psp) {
      ec.eps = targets[jobs[j].setting];
      reports[j] = psp(oracle, ec);
    } else {
      ec.bound_kind = BoundKind::kUniformEmpiricalBennett;
      reports[j] = gs(oracle, sizes[jobs[j].setting], ec);
    }
  });
  for (std::size_t j = 0; j < jobs.size(); ++j) {
    const auto& r = reports[j];
    const double x = jobs[j].is_psp ? targets[jobs[j].setting]
                                    : double(sizes[jobs[j].setting]);
    row(jobs[j].is_psp ? "PSP" : "GS-EB", jobs[j].run, x, r.max_radius(),
        double(r.data_complexity), double(r.query_complexity));
  }

  for (double e : targets) {
    const double m_eb =
        empirical_bennett_sufficient_m(e, delta / size, c, vmax);
    row("GS-EB-bound", 0, e, e, m_eb, m_eb * profiles);
    const auto sched = build_schedule(e, delta, c, beta, std::size_t(size));
    double total = 0.0, worst = 0.0;
    for (double vs : vprof) {
      const double q = psp_profile_query_bound(e, delta, c, vs, beta,
                                               double(sched.length), size)
                           .exact;
      total += q;
      worst = std::max(worst, q);
    }
    row("PSP-bound", 0, e, e, worst, total);
  }
  return t;
}

// Anarchy gap of eps-perturbed congestion games against the true gap and
// its Lipschitz envelope, for a grid of Lambda.
inline CsvTable anarchy_gap_experiment(const Json& cfg_json,
                                       std::uint64_t seed,
                                       std::size_t threads) {
  ConfigReader cfg(cfg_json, "$");
  const std::size_t players = cfg.count("players", 3);
  const std::size_t facilities = cfg.count("facilities", 3);
  const double u0 = cfg.positive("u0", 2.0);
  const double eps = cfg.positive("eps", 0.1);
  const auto lambdas =
      cfg.get<std::vector<double>>("lambdas", internal::grid(0.0, 2.0, 0.25));
  const std::size_t draws = cfg.count("draws", 100);
  const auto models = cfg.get<std::vector<std::string>>(
      "noise_models", {"parabolic", "arcsine"});
  cfg.finish();
  std::vector<PerturbDistribution> dists;
  for (const auto& m : models) {
    try {
      dists.push_back(parse_perturb_distribution(m));
    } catch (const std::invalid_argument& e) {
      throw ConfigError("$.noise_models", e.what());
    }
  }
  for (double l : lambdas)
    if (!(l >= 0.0)) throw ConfigError("$.lambdas", "must be >= 0");

  const auto base =
      internal::congestion_base(players, facilities, u0, derive_seed(seed, 0));
  const auto spec = WelfareSpec::utilitarian();
  std::vector<double> truth;
  for (double l : lambdas) truth.push_back(anarchy_gap(base, spec, l));

  std::vector<std::vector<double>> values(dists.size() * draws);
  parallel_for(values.size(), threads, [&](std::size_t j) {
    const std::size_t m = j / draws, i = j % draws;
    const auto g = perturb_uniform(
        base, eps, derive_seed(seed, 1'000'000 * (m + 1) + i), dists[m]);
    for (double l : lambdas) values[j].push_back(anarchy_gap(g, spec, l));
  });

  CsvTable t;
  t.header = {"schema_version", "Lambda",       "noise_model", "draw_id",
              "ag_value",       "ag_true",      "theory_lower",
              "theory_upper"};
  for (std::size_t li = 0; li < lambdas.size(); ++li) {
    const double slack = 2.0 * (double(players) + lambdas[li]) * eps;
    for (std::size_t m = 0; m < dists.size(); ++m)
      for (std::size_t i = 0; i < draws; ++i)
        t.rows.push_back({internal::schema(), format_number(lambdas[li]),
                          models[m], std::to_string(i),
                          format_number(values[m * draws + i][li]),
                          format_number(truth[li]),
                          format_number(truth[li] - slack),
                          format_number(truth[li] + slack)});
  }
  return t;
}

// Monte Carlo success frequencies: empirical-Bennett mean and variance
// coverage on scaled-Bernoulli draws, and PSP's uniform guarantee.
inline CsvTable coverage_experiment(const Json& cfg_json, std::uint64_t seed,
                                    std::size_t threads) {
  ConfigReader cfg(cfg_json, "$");
  const std::size_t blocks = cfg.count("blocks", 10);
  const std::size_t per_block = cfg.count("trials_per_block", 1000);
  const std::size_t m = cfg.count("m", 200);
  const double delta = cfg.probability("delta", 0.05);
  const double d = cfg.positive("d", 2.0);
  const double sa = cfg.positive("scale_alpha", 1.5);
  const double sb = cfg.positive("scale_beta", 3.0);
  const std::size_t psp_blocks = cfg.count("psp_blocks", 2);
  const std::size_t psp_per_block = cfg.count("psp_runs_per_block", 10);
  const std::size_t k = cfg.count("psp_k", 10);
  const double psp_eps = cfg.positive("psp_eps", 0.2);
  const double psp_delta = cfg.probability("psp_delta", 0.1);
  const double psp_beta = cfg.positive("psp_beta", 1.1);
  cfg.finish();
  if (m < 2) throw ConfigError("$.m", "must be >= 2");
  if (!(psp_beta > 1.0)) throw ConfigError("$.psp_beta", "must be > 1");

  // Mean and variance coverage per trial.
  const std::size_t trials = blocks * per_block;
  std::vector<std::uint8_t> mean_ok(trials), var_ok(trials);
  parallel_for(trials, threads, [&](std::size_t i) {
    SplitMix64 rng(derive_seed(seed, i));
    const double gamma = sample_beta(rng, sa, sb);
    RunningMoments mom;
    for (std::size_t j = 0; j < m; ++j)
      mom.add((rng() >> 63 ? 0.5 : -0.5) * gamma * d);
    const auto b = empirical_bennett_radii(double(m), mom.variance(),
                                           delta / 3.0, d);
    mean_ok[i] = std::abs(mom.mean) <= b.effective_radius;
    var_ok[i] = gamma * gamma * d * d / 4.0 <= b.v_upper;
  });

  const std::size_t psp_runs = psp_blocks * psp_per_block;
  std::vector<std::uint8_t> psp_ok(psp_runs);
  parallel_for(psp_runs, threads, [&](std::size_t i) {
    const auto base = gen_random_zero_sum(k, 2.0, derive_seed(seed, 10'000'000 + i));
    const AdditiveNoiseGame oracle(base, {2.0, sa, sb, {}},
                                   derive_seed(seed, 20'000'000 + i));
    EstimationConfig ec;
    ec.eps = psp_eps;
    ec.delta = psp_delta;
    ec.beta = psp_beta;
    ec.master_seed = derive_seed(seed, 30'000'000 + i);
    psp_ok[i] = verify_uniform(psp(oracle, ec), base, psp_eps);
  });

  CsvTable t;
  t.header = {"schema_version", "check",   "trial_block",
              "trials",         "success_rate", "delta"};
  auto emit = [&](const std::string& name, const std::vector<std::uint8_t>& ok,
                  std::size_t nb, std::size_t per, double nominal) {
    for (std::size_t b = 0; b < nb; ++b) {
      std::size_t hits = 0;
      for (std::size_t i = b * per; i < (b + 1) * per; ++i) hits += ok[i];
      t.rows.push_back({internal::schema(), name, std::to_string(b),
                        std::to_string(per),
                        format_number(double(hits) / double(per)),
                        format_number(nominal)});
    }
  };
  emit("eb_mean", mean_ok, blocks, per_block, delta);
  emit("eb_variance", var_ok, blocks, per_block, delta / 3.0);
  emit("psp_correctness", psp_ok, psp_blocks, psp_per_block, psp_delta);
  return t;
}

using ExperimentFn =
    std::function<CsvTable(const Json&, std::uint64_t, std::size_t)>;

inline const std::map<std::string, ExperimentFn>& experiments() {
  static const std::map<std::string, ExperimentFn> registry = {
      {"eps-nash", eps_nash_experiment},
      {"welfare-error", welfare_error_experiment},
      {"variance-pruning", variance_pruning_experiment},
      {"psp-vs-gs", psp_vs_gs_experiment},
      {"anarchy-gap", anarchy_gap_experiment},
      {"coverage", coverage_experiment},
  };
  return registry;
}

}  // namespace egta

#endif  // EGTA_EXPERIMENTS_HPP_
