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

// JSON game files and run reports.
//
// A game file stores the expected game and, optionally, how to simulate it:
//
//   {"players": 2, "strategies": [2, 2], "c": 1.0,
//    "utilities": [...],                     // player-major, rank order
//    "noise": {"kind": "none"},              // or scaled_bernoulli / poker_discard
//    "meta": {"generator": "rz", "params": {...}, "seed": 7}}
//
// Doubles are written in shortest round-trip form, so load(save(g)) == g.

#ifndef EGTA_GAME_FILE_HPP_
#define EGTA_GAME_FILE_HPP_

#include <array>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "egta/nfg.hpp"
#include "egta/oracle.hpp"
#include "egta/poker.hpp"
#include "egta/sampling.hpp"
#include "json.hpp"

namespace egta {

using Json = nlohmann::json;

// A malformed input document; `path` locates the offending field.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& path, const std::string& what)
      : std::runtime_error(path + ": " + what), path_(path) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

struct OracleSpec {
  enum class Kind { kNone, kScaledBernoulli, kPokerDiscard };
  Kind kind = Kind::kNone;
  NoiseSpec noise;               // scaled_bernoulli
  std::uint64_t noise_seed = 0;  // scaled_bernoulli sign stream
  std::array<std::array<Card, 5>, 2> hands{};  // poker_discard
  std::size_t discards = 1;
  PokerTiebreak tiebreak = PokerTiebreak::kHighCard;
};

struct GameFile {
  NormalFormGame game;
  OracleSpec oracle;
  Json meta = Json::object();
};

namespace internal {

template <typename T>
T get_field(const Json& j, const std::string& key, const std::string& path) {
  if (!j.is_object() || !j.contains(key))
    throw ConfigError(path + "." + key, "missing field");
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception& e) {
    throw ConfigError(path + "." + key, e.what());
  }
}

inline Json hand_json(const std::array<Card, 5>& h) {
  Json out = Json::array();
  for (Card c : h) out.push_back(card_name(c));
  return out;
}

}  // namespace internal

inline Json to_json(const OracleSpec& o) {
  switch (o.kind) {
    case OracleSpec::Kind::kNone:
      return {{"kind", "none"}};
    case OracleSpec::Kind::kScaledBernoulli:
      return {{"kind", "scaled_bernoulli"},
              {"d", o.noise.d},
              {"scale_alpha", o.noise.scale_alpha},
              {"scale_beta", o.noise.scale_beta},
              {"seed", o.noise_seed},
              {"scales", o.noise.scales}};
    case OracleSpec::Kind::kPokerDiscard:
      return {{"kind", "poker_discard"},
              {"hands", {internal::hand_json(o.hands[0]),
                         internal::hand_json(o.hands[1])}},
              {"discards", o.discards},
              {"tiebreak", o.tiebreak == PokerTiebreak::kHighCard ? "high_card"
                                                                   : "none"}};
  }
  return {};
}

inline Json to_json(const GameFile& f) {
  const auto u = f.game.utilities();
  return {{"players", f.game.num_players()},
          {"strategies", f.game.strategy_counts()},
          {"c", f.game.range()},
          {"utilities", std::vector<double>(u.begin(), u.end())},
          {"noise", to_json(f.oracle)},
          {"meta", f.meta}};
}

inline OracleSpec oracle_from_json(const Json& j, const std::string& path) {
  OracleSpec o;
  const auto kind = internal::get_field<std::string>(j, "kind", path);
  if (kind == "none") {
    o.kind = OracleSpec::Kind::kNone;
  } else if (kind == "scaled_bernoulli") {
    o.kind = OracleSpec::Kind::kScaledBernoulli;
    o.noise.d = internal::get_field<double>(j, "d", path);
    o.noise.scale_alpha = internal::get_field<double>(j, "scale_alpha", path);
    o.noise.scale_beta = internal::get_field<double>(j, "scale_beta", path);
    o.noise_seed = internal::get_field<std::uint64_t>(j, "seed", path);
    o.noise.scales =
        internal::get_field<std::vector<double>>(j, "scales", path);
  } else if (kind == "poker_discard") {
    o.kind = OracleSpec::Kind::kPokerDiscard;
    const auto hands = internal::get_field<std::vector<std::vector<std::string>>>(
        j, "hands", path);
    if (hands.size() != 2) throw ConfigError(path + ".hands", "need two hands");
    try {
      o.hands[0] = parse_hand(hands[0]);
      o.hands[1] = parse_hand(hands[1]);
      o.tiebreak = parse_tiebreak(
          internal::get_field<std::string>(j, "tiebreak", path));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(path, e.what());
    }
    o.discards = internal::get_field<std::size_t>(j, "discards", path);
  } else {
    throw ConfigError(path + ".kind", "unknown noise kind '" + kind + "'");
  }
  return o;
}

inline GameFile game_from_json(const Json& j) {
  const std::string root = "$";
  GameFile f;
  const auto players = internal::get_field<std::size_t>(j, "players", root);
  auto counts =
      internal::get_field<std::vector<std::size_t>>(j, "strategies", root);
  if (counts.size() != players)
    throw ConfigError("$.strategies", "length differs from players");
  auto u = internal::get_field<std::vector<double>>(j, "utilities", root);
  const double c = internal::get_field<double>(j, "c", root);
  try {
    f.game = NormalFormGame(std::move(counts), std::move(u), c);
  } catch (const std::invalid_argument& e) {
    throw ConfigError("$.utilities", e.what());
  }
  if (j.contains("noise")) f.oracle = oracle_from_json(j.at("noise"), "$.noise");
  if (j.contains("meta")) f.meta = j.at("meta");
  return f;
}

inline std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Json parse_json_text(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ConfigError(what, e.what());
  }
}

inline GameFile load_game_file(const std::string& path) {
  return game_from_json(parse_json_text(read_text(path), path));
}

inline void save_json(const Json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(1) << '\n';
}

// Simulator for a game file. Games without noise are deterministic.
inline std::unique_ptr<ConditionalGame> make_oracle(const GameFile& f) {
  switch (f.oracle.kind) {
    case OracleSpec::Kind::kNone:
      return std::make_unique<DeterministicGame>(f.game);
    case OracleSpec::Kind::kScaledBernoulli:
      return std::make_unique<AdditiveNoiseGame>(f.game, f.oracle.noise,
                                                 f.oracle.noise_seed);
    case OracleSpec::Kind::kPokerDiscard:
      return std::make_unique<PokerDiscardGame>(
          f.oracle.hands[0], f.oracle.hands[1], f.oracle.discards,
          f.oracle.tiebreak);
  }
  return nullptr;
}

// Game file for a noisy oracle: expected game plus realized noise scales.
inline GameFile game_file_for(const AdditiveNoiseGame& o, std::uint64_t seed) {
  GameFile f;
  f.game = o.base();
  f.oracle.kind = OracleSpec::Kind::kScaledBernoulli;
  f.oracle.noise = o.noise();
  f.oracle.noise_seed = seed;
  return f;
}

inline GameFile game_file_for(const PokerDiscardGame& g) {
  GameFile f;
  f.game = *g.expected_game();
  f.oracle.kind = OracleSpec::Kind::kPokerDiscard;
  f.oracle.hands = g.hands();
  f.oracle.discards = g.discards();
  f.oracle.tiebreak = g.tiebreak();
  return f;
}

namespace internal {

// NaN has no JSON spelling; store it as null.
inline Json nullable(const std::vector<double>& v) {
  Json out = Json::array();
  for (double x : v) out.push_back(std::isnan(x) ? Json(nullptr) : Json(x));
  return out;
}

inline std::vector<double> from_nullable(const Json& j,
                                         const std::string& path) {
  if (!j.is_array()) throw ConfigError(path, "expected an array");
  std::vector<double> out;
  for (const auto& x : j) {
    if (x.is_null()) out.push_back(std::nan(""));
    else if (x.is_number()) out.push_back(x.get<double>());
    else throw ConfigError(path, "expected numbers");
  }
  return out;
}

}  // namespace internal

inline Json to_json(const Schedule& s) {
  return {{"beta", s.beta},           {"length", s.length},
          {"log_term", s.log_term},   {"alpha", s.alpha},
          {"omega", s.omega},         {"sizes", s.sizes},
          {"final_size", s.final_size}, {"clamped", s.clamped}};
}

inline Json to_json(const RunReport& r) {
  Json iters = Json::array();
  for (const auto& it : r.iterations)
    iters.push_back({{"t", it.t},
                     {"m_t", it.m_t},
                     {"active_indices", it.active_indices},
                     {"active_profiles", it.active_profiles},
                     {"cumulative_data", it.cumulative_data},
                     {"cumulative_queries", it.cumulative_queries}});
  Json j = {{"algorithm", r.algorithm},
            {"strategies", r.strategy_counts},
            {"c", r.c},
            {"delta", r.delta},
            {"eps", r.eps},
            {"max_radius", r.max_radius()},
            {"success", r.success},
            {"data_complexity", r.data_complexity},
            {"query_complexity", r.query_complexity},
            {"profile_queries", r.profile_queries},
            {"estimated", r.estimated},
            {"estimates", internal::nullable(r.estimates)},
            {"radii", internal::nullable(r.radii)},
            {"variances", internal::nullable(r.variances)},
            {"iterations", iters}};
  if (r.schedule) j["schedule"] = to_json(*r.schedule);
  return j;
}

// Reads back the fields verification needs.
inline RunReport report_from_json(const Json& j) {
  const std::string root = "$";
  RunReport r;
  r.algorithm = internal::get_field<std::string>(j, "algorithm", root);
  r.strategy_counts =
      internal::get_field<std::vector<std::size_t>>(j, "strategies", root);
  r.c = internal::get_field<double>(j, "c", root);
  r.delta = internal::get_field<double>(j, "delta", root);
  r.eps = internal::get_field<double>(j, "eps", root);
  r.success = internal::get_field<bool>(j, "success", root);
  r.data_complexity =
      internal::get_field<std::uint64_t>(j, "data_complexity", root);
  r.query_complexity =
      internal::get_field<std::uint64_t>(j, "query_complexity", root);
  r.profile_queries = internal::get_field<std::vector<std::uint64_t>>(
      j, "profile_queries", root);
  r.estimated =
      internal::get_field<std::vector<std::uint8_t>>(j, "estimated", root);
  if (!j.contains("estimates") || !j.contains("radii"))
    throw ConfigError("$", "report lacks estimates or radii");
  r.estimates = internal::from_nullable(j.at("estimates"), "$.estimates");
  r.radii = internal::from_nullable(j.at("radii"), "$.radii");
  if (j.contains("variances"))
    r.variances = internal::from_nullable(j.at("variances"), "$.variances");
  if (r.estimates.size() != r.estimated.size() ||
      r.radii.size() != r.estimated.size())
    throw ConfigError("$.estimates", "array lengths disagree");
  return r;
}

}  // namespace egta

#endif  // EGTA_GAME_FILE_HPP_
