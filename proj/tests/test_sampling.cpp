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


#include <cmath>
#include <numeric>

#include "egta/generators.hpp"
#include "egta/oracle.hpp"
#include "egta/sampling.hpp"
#include "gtest/gtest.h"
#include "test_util.hpp"

namespace egta {
namespace {

using testing::random_game;

AdditiveNoiseGame noisy_rz(std::size_t k, std::uint64_t seed, double d = 2.0) {
  return AdditiveNoiseGame(gen_random_zero_sum(k, 2.0, seed),
                           {d, 1.5, 3.0, {}}, seed + 1);
}

TEST(ScheduleTest, ByHand) {
  // 3c/(4 eps) = 15, so T = floor(log2 15) = 3.
  const auto s = build_schedule(0.2, 0.1, 4.0, 2.0, 8);
  EXPECT_EQ(s.length, 3u);
  EXPECT_FALSE(s.clamped);
  const double L = std::log(3.0 * 3 * 8 / 0.1);
  EXPECT_NEAR(s.log_term, L, 1e-12);
  EXPECT_NEAR(s.alpha, 2.0 * 4.0 / 0.6 * L, 1e-9);
  EXPECT_NEAR(s.omega, 16.0 / 0.08 * L, 1e-9);
  ASSERT_EQ(s.sizes.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i)
    EXPECT_EQ(s.sizes[i], std::uint64_t(std::ceil(s.alpha * std::pow(2.0, i + 1))));
  EXPECT_EQ(s.final_size, std::uint64_t(std::ceil(s.omega)));
}

TEST(ScheduleTest, ExactPowerDoesNotFloorShort) {
  // 3c/(4 eps) = 8 = 2^3 exactly.
  EXPECT_EQ(build_schedule(0.375, 0.1, 4.0, 2.0, 1).length, 3u);
}

TEST(ScheduleTest, ClampsCoarseTargets) {
  const auto s = build_schedule(10.0, 0.1, 2.0, 2.0, 4);
  EXPECT_TRUE(s.clamped);
  EXPECT_EQ(s.length, 1u);
  EXPECT_EQ(s.sizes.size(), 1u);
  EXPECT_GE(s.final_size, s.sizes[0]);
}

TEST(ScheduleTest, Validation) {
  EXPECT_THROW(build_schedule(0.1, 0.1, 1.0, 1.0, 4), std::invalid_argument);
  EXPECT_THROW(build_schedule(0.0, 0.1, 1.0, 2.0, 4), std::invalid_argument);
  EXPECT_THROW(build_schedule(0.1, 0.0, 1.0, 2.0, 4), std::invalid_argument);
  EXPECT_THROW(build_schedule(0.1, 0.1, 1.0, 2.0, 0), std::invalid_argument);
}

TEST(ScheduleProperty, IncreasingAndCappedByOmega) {
  for (double eps : {0.01, 0.05, 0.2, 0.7})
    for (double beta : {1.05, 1.1, 1.5, 2.0, 3.0})
      for (double c : {1.0, 2.0, 22.0}) {
        const auto s = build_schedule(eps, 0.05, c, beta, 648);
        for (std::size_t i = 1; i < s.sizes.size(); ++i)
          EXPECT_LT(s.sizes[i - 1], s.sizes[i]);
        if (!s.clamped) {
          EXPECT_LE(s.alpha * std::pow(beta, double(s.length)),
                    s.omega * (1 + 1e-12));
        }
        EXPECT_GE(s.final_size, s.sizes.back());
      }
}

TEST(RunningMomentsTest, MatchesTwoPass) {
  const std::vector<double> x = {0.5, -1.25, 3.0, 2.0, 2.0, -0.75};
  RunningMoments m;
  for (double v : x) m.add(v);
  const double mean = std::accumulate(x.begin(), x.end(), 0.0) / 6.0;
  double ss = 0.0;
  for (double v : x) ss += (v - mean) * (v - mean);
  EXPECT_NEAR(m.mean, mean, 1e-15);
  EXPECT_NEAR(m.variance(), ss / 5.0, 1e-14);
  EXPECT_EQ(m.count, 6u);
}

TEST(AccumulatorTest, FreezeStopsIngestion) {
  EmpiricalAccumulator a;
  a.ingest(1.0);
  a.ingest(3.0);
  a.freeze(0.5);
  EXPECT_TRUE(a.frozen());
  EXPECT_EQ(a.estimate(), 2.0);
  EXPECT_EQ(a.radius(), 0.5);
  EXPECT_THROW(a.ingest(4.0), std::logic_error);
}

TEST(BoundKindTest, ParseAndPrint) {
  for (auto k : {BoundKind::kHoeffdingBonferroni,
                 BoundKind::kUniformEmpiricalBennett,
                 BoundKind::kPerIndexEmpiricalBennett})
    EXPECT_EQ(parse_bound_kind(to_string(k)), k);
  EXPECT_EQ(parse_bound_kind("hoeffding"), BoundKind::kHoeffdingBonferroni);
  EXPECT_THROW(parse_bound_kind("bogus"), std::invalid_argument);
}

TEST(GsTest, DeterministicOracleIsExact) {
  const auto g = random_game({3, 2}, 5);
  const DeterministicGame oracle(g);
  EstimationConfig ec;
  ec.bound_kind = BoundKind::kHoeffdingBonferroni;
  const auto r = gs(oracle, 10, ec);
  for (std::size_t i = 0; i < g.num_indices(); ++i) {
    EXPECT_EQ(r.estimates[i], g.utilities()[i]);
    EXPECT_EQ(r.variances[i], 0.0);
    EXPECT_DOUBLE_EQ(r.radii[i], hoeffding_radius(10, 0.05 / 12, 2.0));
  }
  EXPECT_EQ(r.data_complexity, 10u);
  EXPECT_EQ(r.query_complexity, 60u);
  EXPECT_TRUE(verify_uniform(r, g, 0.0));
}

TEST(GsTest, UniformBennettUsesLargestVariance) {
  const auto oracle = noisy_rz(3, 9);
  EstimationConfig ec;
  ec.bound_kind = BoundKind::kUniformEmpiricalBennett;
  const auto r = gs(oracle, 50, ec);
  const double vmax = *std::max_element(r.variances.begin(), r.variances.end());
  const double e =
      empirical_bennett_radii(50, vmax, 0.05 / (3.0 * 18), oracle.range())
          .eps_mu;
  for (double x : r.radii) EXPECT_DOUBLE_EQ(x, e);
  ec.bound_kind = BoundKind::kPerIndexEmpiricalBennett;
  const auto per = gs(oracle, 50, ec);
  for (std::size_t i = 0; i < per.radii.size(); ++i)
    EXPECT_LE(per.radii[i], e + 1e-15);
}

TEST(GsTest, RejectsTooFewSamples) {
  const auto oracle = noisy_rz(2, 1);
  EstimationConfig ec;
  ec.bound_kind = BoundKind::kUniformEmpiricalBennett;
  EXPECT_THROW(gs(oracle, 1, ec), std::invalid_argument);
}

TEST(GsTest, SharedConditionsAcrossProfiles) {
  // An oracle echoing the condition shows every profile saw the same stream.
  const FunctionGame echo({2, 2}, 2.0,
                          [](std::size_t, std::uint64_t y, std::span<double> o) {
                            o[0] = o[1] = uniform01(y) - 0.5;
                          });
  EstimationConfig ec;
  ec.bound_kind = BoundKind::kHoeffdingBonferroni;
  const auto r = gs(echo, 7, ec);
  for (double x : r.estimates) EXPECT_EQ(x, r.estimates[0]);
}

TEST(GsTest, ThreadCountDoesNotChangeResults) {
  const auto oracle = noisy_rz(6, 3);
  EstimationConfig ec;
  ec.bound_kind = BoundKind::kPerIndexEmpiricalBennett;
  ec.master_seed = 77;
  ec.threads = 1;
  const auto a = gs(oracle, 300, ec);
  ec.threads = 4;
  const auto b = gs(oracle, 300, ec);
  EXPECT_EQ(a.estimates, b.estimates);
  EXPECT_EQ(a.radii, b.radii);
}

TEST(PspTest, DeterministicOracleStopsEarly) {
  const auto g = random_game({3, 3}, 17);
  const DeterministicGame oracle(g);
  EstimationConfig ec;
  ec.eps = 0.1;
  ec.beta = 1.5;
  const auto r = psp(oracle, ec);
  EXPECT_TRUE(r.success);
  EXPECT_TRUE(verify_uniform(r, g, 0.0));
  ASSERT_TRUE(r.schedule.has_value());
  EXPECT_LT(r.data_complexity, r.schedule->final_size);
  for (double x : r.radii) EXPECT_LE(x, 0.1);
}

TEST(PspTest, ThreadCountDoesNotChangeResults) {
  const auto oracle = noisy_rz(8, 21);
  EstimationConfig ec;
  ec.eps = 0.3;
  ec.delta = 0.1;
  ec.beta = 1.3;
  ec.master_seed = 5;
  ec.threads = 1;
  const auto a = psp(oracle, ec);
  ec.threads = 3;
  const auto b = psp(oracle, ec);
  EXPECT_EQ(a.estimates, b.estimates);
  EXPECT_EQ(a.radii, b.radii);
  EXPECT_EQ(a.profile_queries, b.profile_queries);
  EXPECT_EQ(a.query_complexity, b.query_complexity);
}

TEST(PspTest, SeedChangesSamples) {
  const auto oracle = noisy_rz(4, 2);
  EstimationConfig ec;
  ec.eps = 0.3;
  ec.master_seed = 1;
  const auto a = psp(oracle, ec);
  ec.master_seed = 2;
  const auto b = psp(oracle, ec);
  EXPECT_NE(a.estimates, b.estimates);
}

TEST(PspTest, SubsetOfIndices) {
  const auto oracle = noisy_rz(4, 8);
  EstimationConfig ec;
  ec.eps = 0.3;
  const std::vector<std::size_t> subset = {0, 5, 17, 31};
  const auto r = psp(oracle, subset, ec);
  for (std::size_t i = 0; i < oracle.num_indices(); ++i) {
    const bool in = std::find(subset.begin(), subset.end(), i) != subset.end();
    EXPECT_EQ(bool(r.estimated[i]), in);
    EXPECT_EQ(std::isnan(r.estimates[i]), !in);
  }
  // Profiles with no wanted index are never queried.
  std::size_t queried = 0;
  for (auto q : r.profile_queries) queried += q > 0;
  EXPECT_EQ(queried, 4u);
  EXPECT_THROW(psp(oracle, std::vector<std::size_t>{}, ec),
               std::invalid_argument);
  EXPECT_THROW(psp(oracle, std::vector<std::size_t>{999}, ec),
               std::out_of_range);
}

TEST(PspProperty, AccountingInvariants) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto oracle = noisy_rz(5, 100 + seed);
    EstimationConfig ec;
    ec.eps = 0.25;
    ec.delta = 0.1;
    ec.beta = 1.2;
    ec.master_seed = seed;
    const auto r = psp(oracle, ec);
    std::uint64_t total = 0;
    for (auto q : r.profile_queries) {
      EXPECT_LE(q, r.data_complexity);
      total += q;
    }
    EXPECT_EQ(total, r.query_complexity);
    for (std::size_t t = 1; t < r.iterations.size(); ++t) {
      EXPECT_LE(r.iterations[t].active_indices,
                r.iterations[t - 1].active_indices);
      EXPECT_LT(r.iterations[t - 1].m_t, r.iterations[t].m_t);
    }
    if (r.success) {
      EXPECT_EQ(r.iterations.back().active_indices, 0u);
      for (double x : r.radii) EXPECT_LE(x, ec.eps);
    }
  }
}

TEST(PspTest, OracleErrorsCarryContext) {
  const FunctionGame broken({2}, 2.0,
                            [](std::size_t s, std::uint64_t, std::span<double>) {
                              if (s == 1) throw std::runtime_error("boom");
                            });
  EstimationConfig ec;
  ec.eps = 0.5;
  try {
    psp(broken, ec);
    FAIL() << "expected OracleError";
  } catch (const OracleError& e) {
    EXPECT_EQ(e.rank(), 1u);
    EXPECT_EQ(e.condition_index(), 0u);
  }
}

TEST(VerifyTest, DetectsViolations) {
  const auto g = random_game({2, 2}, 3);
  const DeterministicGame oracle(g);
  EstimationConfig ec;
  ec.bound_kind = BoundKind::kHoeffdingBonferroni;
  auto r = gs(oracle, 2, ec);
  EXPECT_TRUE(verify_uniform(r, g, 0.0));
  r.estimates[3] += 0.1;
  EXPECT_FALSE(verify_uniform(r, g, 0.05));
  EXPECT_TRUE(verify_uniform(r, g, 0.1));
  EXPECT_THROW(verify_uniform(r, random_game({3, 2}, 1), 0.1),
               std::invalid_argument);
  const auto est = estimated_game(r);
  EXPECT_EQ(est.at(0, 3), r.estimates[3]);
}

}  // namespace
}  // namespace egta
