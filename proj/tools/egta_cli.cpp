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

// egta: generate games, compute properties, run GS / PSP, run experiments,
// and verify estimates.
//
// Exit codes: 0 ok, 1 verification failed, 2 usage, 3 config, 4 runtime.

#include <charconv>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "egta/egta.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitConfig = 3;
constexpr int kExitRuntime = 4;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Globals {
  std::uint64_t seed = 0;
  std::size_t threads = 0;
  std::string out = "-";
  std::string format = "csv";
};

void write_output(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << text;
}

// Cells that parse completely as numbers become JSON numbers.
egta::Json table_to_json(const egta::CsvTable& t) {
  egta::Json rows = egta::Json::array();
  for (const auto& r : t.rows) {
    egta::Json obj = egta::Json::object();
    for (std::size_t i = 0; i < t.header.size(); ++i) {
      const auto& cell = r[i];
      double x = 0.0;
      const auto res =
          std::from_chars(cell.data(), cell.data() + cell.size(), x);
      if (!cell.empty() && res.ec == std::errc() &&
          res.ptr == cell.data() + cell.size() && std::isfinite(x))
        obj[t.header[i]] = x;
      else
        obj[t.header[i]] = cell;
    }
    rows.push_back(std::move(obj));
  }
  return rows;
}

void emit_table(const Globals& g, const egta::CsvTable& t) {
  if (g.format == "json")
    write_output(g.out, table_to_json(t).dump(1) + "\n");
  else
    write_output(g.out, t.str());
}

std::string profile_label(const egta::Profile& p) {
  std::string s;
  for (std::size_t i = 0; i < p.size(); ++i)
    s += (i ? "-" : "") + std::to_string(p[i]);
  return s;
}

// ---------------------------------------------------------------------------
// gen
// ---------------------------------------------------------------------------

struct GenArgs {
  std::string generator;
  std::size_t k = 18;
  double u0 = 2.0;
  std::size_t players = 3;
  std::size_t facilities = 3;
  std::size_t kmax = 3;
  double powerlaw_alpha = 0.5;
  bool all_subsets = false;
  std::string costs = "linear";
  double gamma = 0.1;
  double c = 1.0;
  std::string name = "gamma1";
  std::vector<std::string> hand1, hand2;
  std::size_t discards = 1;
  std::string tiebreak = "high_card";
  double noise_d = 0.0;
  double scale_alpha = 1.5;
  double scale_beta = 3.0;
};

int run_gen(const Globals& g, const GenArgs& a) {
  using namespace egta;
  GameFile f;
  Json params = Json::object();
  if (a.generator == "rz") {
    f.game = gen_random_zero_sum(a.k, a.u0, g.seed);
    params = {{"k", a.k}, {"u0", a.u0}};
  } else if (a.generator == "rc") {
    if (a.costs != "linear" && a.costs != "affine")
      throw UsageError("--costs must be linear or affine");
    const FacilityCost cost = a.costs == "affine"
                                  ? random_affine_costs(a.facilities,
                                                        derive_seed(g.seed, 1))
                                  : FacilityCost(linear_cost);
    const auto cs = a.all_subsets
                        ? all_subsets_structure(a.players, a.facilities)
                        : random_congestion_structure(a.players, a.facilities,
                                                      a.kmax, a.powerlaw_alpha,
                                                      g.seed);
    f.game = rescale_into(congestion_game(cs, cost), a.u0);
    params = {{"players", a.players},       {"facilities", a.facilities},
              {"u0", a.u0},                 {"all_subsets", a.all_subsets},
              {"costs", a.costs}};
    if (!a.all_subsets) {
      params["kmax"] = a.kmax;
      params["powerlaw_alpha"] = a.powerlaw_alpha;
    }
  } else if (a.generator == "counterexample") {
    f.game = gen_counterexample(a.gamma, a.c);
    params = {{"gamma", a.gamma}, {"c", a.c}};
  } else if (a.generator == "fixture") {
    if (a.name == "gamma1")
      f.game = fixture_gamma1();
    else if (a.name == "gamma2")
      f.game = fixture_gamma2();
    else
      throw UsageError("--name must be gamma1 or gamma2");
    params = {{"name", a.name}};
  } else if (a.generator == "poker") {
    auto hands = random_hands(g.seed);
    if (!a.hand1.empty()) hands[0] = parse_hand(a.hand1);
    if (!a.hand2.empty()) hands[1] = parse_hand(a.hand2);
    f = game_file_for(gen_poker_discard(hands[0], hands[1], a.discards,
                                        parse_tiebreak(a.tiebreak)));
    params = {{"discards", a.discards}, {"tiebreak", a.tiebreak}};
  } else {
    throw UsageError("unknown generator '" + a.generator + "'");
  }

  if (a.noise_d > 0.0) {
    if (f.oracle.kind != OracleSpec::Kind::kNone)
      throw UsageError("--noise-d cannot be combined with the poker oracle");
    const auto noise_seed = derive_seed(g.seed, 2);
    f = game_file_for(
        AdditiveNoiseGame(f.game, {a.noise_d, a.scale_alpha, a.scale_beta, {}},
                          noise_seed),
        noise_seed);
  }
  f.meta = {{"generator", a.generator}, {"params", params}, {"seed", g.seed}};
  write_output(g.out, to_json(f).dump(1) + "\n");
  return kExitOk;
}

// ---------------------------------------------------------------------------
// props
// ---------------------------------------------------------------------------

struct PropsArgs {
  std::string game;
  std::vector<double> eps = {0.0};
  std::vector<double> rho;
  std::vector<double> lambda;
  std::string approx_of;
  std::optional<double> approx_eps;
  std::optional<double> gamma;
  double ppoa_x = 0.0;
};

void add_interval(egta::CsvTable& t, const std::string& name,
                  const egta::IntervalBound& b, double eps) {
  using egta::format_number;
  const std::string e = format_number(eps);
  const std::string v = std::to_string(egta::kCsvSchemaVersion);
  t.rows.push_back({v, name + "_lower", e, "", "", format_number(b.lower)});
  t.rows.push_back({v, name + "_upper", e, "", "", format_number(b.upper)});
  t.rows.push_back({v, name + "_valid", e, "", "", b.valid() ? "1" : "0"});
}

int run_props(const Globals& g, const PropsArgs& a) {
  using namespace egta;
  const auto file = load_game_file(a.game);
  const auto& game = file.game;
  const std::string v = std::to_string(kCsvSchemaVersion);
  CsvTable t;
  t.header = {"schema_version", "property", "parameter",
              "profile",        "player",   "value"};

  const auto regrets = regret_table(game);
  for (std::size_t s = 0; s < game.num_profiles(); ++s)
    t.rows.push_back({v, "regret", "", profile_label(game.profile_at(s)), "",
                      format_number(regrets[s])});
  for (double e : a.eps) {
    const auto set = eps_nash_set(game, e);
    t.rows.push_back({v, "eps_nash_count", format_number(e), "", "",
                      std::to_string(set.size())});
    for (const auto& p : set.profiles)
      t.rows.push_back(
          {v, "eps_nash", format_number(e), profile_label(p), "", "1"});
  }
  for (double r : a.rho) {
    const auto w = welfare_table(game, WelfareSpec::power_mean(r));
    for (std::size_t s = 0; s < w.size(); ++s)
      t.rows.push_back({v, "power_mean", format_number(r),
                        profile_label(game.profile_at(s)), "",
                        format_number(w[s])});
  }
  for (double l : a.lambda)
    t.rows.push_back({v, "anarchy_gap", format_number(l), "", "",
                      format_number(anarchy_gap(
                          game, WelfareSpec::utilitarian(), l))});
  for (std::size_t p = 0; p < game.num_players(); ++p) {
    const auto m = maximin(game, p);
    t.rows.push_back({v, "maximin", "", "", std::to_string(p),
                      format_number(m.value)});
    t.rows.push_back({v, "maximin_strategy", "", "", std::to_string(p),
                      std::to_string(m.strategy)});
  }

  // Bounds treat either the input game or a report's estimate as an
  // eps-approximation of an unknown game.
  std::optional<NormalFormGame> approx;
  std::optional<double> eps = a.approx_eps;
  if (!a.approx_of.empty()) {
    const auto report = report_from_json(
        parse_json_text(read_text(a.approx_of), a.approx_of));
    approx = estimated_game(report);
    if (!eps) eps = report.max_radius();
  } else if (eps) {
    approx = game;
  }
  if (approx) {
    const auto spec = WelfareSpec::utilitarian();
    add_interval(t, "eq_welfare", extreme_eq_bounds(*approx, *eps, spec), *eps);
    if (a.gamma) {
      const auto refined =
          extreme_eq_bounds_refined(*approx, *eps, *a.gamma, spec);
      add_interval(t, "md_refined", refined.md, *eps);
      add_interval(t, "mc_refined", refined.mc, *eps);
    }
    const auto ratios = ar_sr_bounds(*approx, *eps, spec, a.gamma);
    add_interval(t, "anarchy_ratio", ratios.anarchy_ratio, *eps);
    add_interval(t, "stability_ratio", ratios.stability_ratio, *eps);
    const auto ppoa = ppoa_estimators(*approx, *eps, a.ppoa_x);
    const std::string e = format_number(*eps);
    t.rows.push_back({v, "ppoa_lower", e, "", "", format_number(ppoa.lower)});
    t.rows.push_back({v, "ppoa_upper", e, "", "", format_number(ppoa.upper)});
    t.rows.push_back({v, "ppoa_mean", format_number(a.ppoa_x), "", "",
                      format_number(ppoa.mean)});
  }
  emit_table(g, t);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// gs / psp
// ---------------------------------------------------------------------------

struct SampleArgs {
  std::string game;
  std::uint64_t m = 1000;
  double eps = 0.1;
  double delta = 0.05;
  double beta = 1.1;
  double c = 0.0;
  std::string bound = "uniform_empirical_bennett";
  std::string log;
};

egta::EstimationConfig sample_config(const Globals& g, const SampleArgs& a) {
  egta::EstimationConfig ec;
  ec.eps = a.eps;
  ec.delta = a.delta;
  ec.beta = a.beta;
  ec.c = a.c;
  ec.bound_kind = egta::parse_bound_kind(a.bound);
  ec.master_seed = g.seed;
  ec.threads = egta::resolve_threads(g.threads);
  return ec;
}

void write_report(const Globals& g, const SampleArgs& a,
                  const egta::RunReport& r) {
  write_output(g.out, egta::to_json(r).dump(1) + "\n");
  if (a.log.empty()) return;
  egta::CsvTable t;
  t.header = {"schema_version", "t", "m_t", "active_indices",
              "active_profiles", "cumulative_data", "cumulative_queries"};
  for (const auto& it : r.iterations)
    t.rows.push_back({std::to_string(egta::kCsvSchemaVersion),
                      std::to_string(it.t), std::to_string(it.m_t),
                      std::to_string(it.active_indices),
                      std::to_string(it.active_profiles),
                      std::to_string(it.cumulative_data),
                      std::to_string(it.cumulative_queries)});
  write_output(a.log, t.str());
}

int run_gs(const Globals& g, const SampleArgs& a) {
  const auto file = egta::load_game_file(a.game);
  const auto oracle = egta::make_oracle(file);
  write_report(g, a, egta::gs(*oracle, a.m, sample_config(g, a)));
  return kExitOk;
}

int run_psp(const Globals& g, const SampleArgs& a) {
  const auto file = egta::load_game_file(a.game);
  const auto oracle = egta::make_oracle(file);
  write_report(g, a, egta::psp(*oracle, sample_config(g, a)));
  return kExitOk;
}

// ---------------------------------------------------------------------------
// exp / verify
// ---------------------------------------------------------------------------

struct ExpArgs {
  std::string name;
  std::string config_file;
  std::string config_json;
};

int run_exp(const Globals& g, const ExpArgs& a) {
  const auto& registry = egta::experiments();
  const auto it = registry.find(a.name);
  if (it == registry.end()) {
    std::string names;
    for (const auto& [k, v] : registry) names += " " + k;
    throw UsageError("unknown experiment '" + a.name + "'; choose from:" +
                     names);
  }
  egta::Json cfg = egta::Json::object();
  if (!a.config_file.empty())
    cfg = egta::parse_json_text(egta::read_text(a.config_file), a.config_file);
  if (!a.config_json.empty())
    cfg = egta::parse_json_text(a.config_json, "--config-json");
  emit_table(g, it->second(cfg, g.seed, egta::resolve_threads(g.threads)));
  return kExitOk;
}

struct VerifyArgs {
  std::string game;
  std::string report;
  std::optional<double> eps;
};

int run_verify(const VerifyArgs& a) {
  const auto file = egta::load_game_file(a.game);
  const auto report = egta::report_from_json(
      egta::parse_json_text(egta::read_text(a.report), a.report));
  const double eps = a.eps ? *a.eps : report.eps;
  const auto truth = file.oracle.kind == egta::OracleSpec::Kind::kNone
                         ? file.game
                         : *egta::make_oracle(file)->expected_game();
  const bool ok = egta::verify_uniform(report, truth, eps);
  double worst = 0.0;
  const auto u = truth.utilities();
  for (std::size_t i = 0; i < u.size(); ++i)
    if (report.estimated[i])
      worst = std::max(worst, std::abs(report.estimates[i] - u[i]));
  std::cout << (ok ? "pass" : "fail") << " max_error=" << worst
            << " eps=" << eps << '\n';
  return ok ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Empirical game-theoretic analysis toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "Master seed")->capture_default_str();
  app.add_option("--threads", g.threads,
                 "Worker threads (0: EGTA_THREADS or hardware)")
      ->capture_default_str();
  app.add_option("--out", g.out, "Output path ('-' for stdout)")
      ->capture_default_str();
  app.add_option("--format", g.format, "Table output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Write a game file");
  gen_cmd->add_option("generator", gen.generator,
                      "rz | rc | counterexample | fixture | poker")
      ->required();
  gen_cmd->add_option("--k", gen.k, "Strategies per player (rz)");
  gen_cmd->add_option("--u0", gen.u0, "Utility range (rz, rc)");
  gen_cmd->add_option("--players", gen.players, "Players (rc)");
  gen_cmd->add_option("--facilities", gen.facilities, "Facilities (rc)");
  gen_cmd->add_option("--kmax", gen.kmax, "Max strategies per player (rc)");
  gen_cmd->add_option("--powerlaw-alpha", gen.powerlaw_alpha,
                      "Facility inclusion decay (rc)");
  gen_cmd->add_flag("--all-subsets", gen.all_subsets,
                    "Every nonempty facility subset is a strategy (rc)");
  gen_cmd->add_option("--costs", gen.costs, "linear | affine (rc)");
  gen_cmd->add_option("--gamma", gen.gamma, "Counterexample gamma");
  gen_cmd->add_option("--c", gen.c, "Counterexample welfare jump");
  gen_cmd->add_option("--name", gen.name, "Fixture: gamma1 | gamma2");
  gen_cmd->add_option("--hand1", gen.hand1, "Five cards, e.g. AS KD 10H 2C 7S");
  gen_cmd->add_option("--hand2", gen.hand2, "Five cards for player 2");
  gen_cmd->add_option("--discards", gen.discards, "Cards discarded (poker)");
  gen_cmd->add_option("--tiebreak", gen.tiebreak, "high_card | none (poker)");
  gen_cmd->add_option("--noise-d", gen.noise_d,
                      "Attach scaled-Bernoulli noise of width d");
  gen_cmd->add_option("--scale-alpha", gen.scale_alpha, "Beta shape alpha");
  gen_cmd->add_option("--scale-beta", gen.scale_beta, "Beta shape beta");

  PropsArgs props;
  auto* props_cmd = app.add_subcommand("props", "Compute game properties");
  props_cmd->add_option("game", props.game, "Game file")->required();
  props_cmd->add_option("--eps", props.eps, "eps-Nash thresholds");
  props_cmd->add_option("--rho", props.rho, "Power-mean exponents");
  props_cmd->add_option("--lambda", props.lambda, "Anarchy-gap Lambda values");
  props_cmd->add_option("--approx-of", props.approx_of,
                        "Run report whose estimate is the approximation");
  props_cmd->add_option("--approx-eps", props.approx_eps,
                        "Approximation error for the bounds");
  props_cmd->add_option("--gamma", props.gamma, "Stability constant");
  props_cmd->add_option("--ppoa-x", props.ppoa_x, "Nash slack for PPOA mean");

  SampleArgs gs_args;
  auto* gs_cmd = app.add_subcommand("gs", "Global sampling");
  gs_cmd->add_option("game", gs_args.game, "Game file")->required();
  gs_cmd->add_option("--m", gs_args.m, "Samples per profile")
      ->capture_default_str();
  gs_cmd->add_option("--delta", gs_args.delta, "Failure probability")
      ->capture_default_str();
  gs_cmd->add_option("--c", gs_args.c, "Range override (0: oracle range)");
  gs_cmd->add_option("--bound", gs_args.bound,
                     "hoeffding | uniform_empirical_bennett | "
                     "per_index_empirical_bennett")
      ->capture_default_str();
  gs_cmd->add_option("--log", gs_args.log, "Per-iteration CSV log path");

  SampleArgs psp_args;
  auto* psp_cmd =
      app.add_subcommand("psp", "Progressive sampling with pruning");
  psp_cmd->add_option("game", psp_args.game, "Game file")->required();
  psp_cmd->add_option("--eps", psp_args.eps, "Target uniform error")
      ->capture_default_str();
  psp_cmd->add_option("--delta", psp_args.delta, "Failure probability")
      ->capture_default_str();
  psp_cmd->add_option("--beta", psp_args.beta, "Schedule growth (> 1)")
      ->capture_default_str();
  psp_cmd->add_option("--c", psp_args.c, "Range override (0: oracle range)");
  psp_cmd->add_option("--log", psp_args.log, "Per-iteration CSV log path");

  ExpArgs exp;
  auto* exp_cmd = app.add_subcommand("exp", "Run a named experiment");
  exp_cmd->add_option("name", exp.name, "Experiment name")->required();
  exp_cmd->add_option("--config", exp.config_file, "JSON override file");
  exp_cmd->add_option("--config-json", exp.config_json, "Inline JSON overrides");

  VerifyArgs verify;
  auto* verify_cmd =
      app.add_subcommand("verify", "Check a report against the true game");
  verify_cmd->add_option("game", verify.game, "Game file")->required();
  verify_cmd->add_option("report", verify.report, "Run report")->required();
  verify_cmd->add_option("--eps", verify.eps,
                         "Tolerance (default: the report's target)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*gen_cmd) return run_gen(g, gen);
    if (*props_cmd) return run_props(g, props);
    if (*gs_cmd) return run_gs(g, gs_args);
    if (*psp_cmd) return run_psp(g, psp_args);
    if (*exp_cmd) return run_exp(g, exp);
    if (*verify_cmd) return run_verify(verify);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const egta::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "runtime error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitUsage;
}
