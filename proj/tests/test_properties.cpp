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
#include <limits>

#include "egta/generators.hpp"
#include "egta/properties.hpp"
#include "gtest/gtest.h"
#include "test_util.hpp"

namespace egta {
namespace {

using testing::jitter;
using testing::prisoners_dilemma;
using testing::random_game;

double W(std::vector<double> u, const WelfareSpec& spec) {
  return welfare(std::span<const double>(u), spec);
}

TEST(WelfareTest, PowerMeanSpecialCases) {
  const std::vector<double> u = {1.0, 4.0};
  EXPECT_DOUBLE_EQ(W(u, WelfareSpec::power_mean(1.0)), 2.5);
  EXPECT_DOUBLE_EQ(W(u, WelfareSpec::power_mean(0.0)), 2.0);
  EXPECT_DOUBLE_EQ(W(u, WelfareSpec::power_mean(-1.0)), 1.6);
  EXPECT_DOUBLE_EQ(W(u, WelfareSpec::power_mean(2.0)), std::sqrt(8.5));
  EXPECT_EQ(W(u, WelfareSpec::power_mean(kInf)), 4.0);
  EXPECT_EQ(W(u, WelfareSpec::power_mean(-kInf)), 1.0);
  EXPECT_DOUBLE_EQ(W(u, WelfareSpec::power_mean(1.0, {0.25, 0.75})), 3.25);
}

TEST(WelfareTest, PowerMeanDomain) {
  EXPECT_THROW(W({1.0, 0.0}, WelfareSpec::power_mean(0.5)), std::domain_error);
  EXPECT_THROW(W({1.0, -1.0}, WelfareSpec::power_mean(1.5)),
               std::domain_error);
  // Integer rho >= 1 accepts negative utilities.
  EXPECT_DOUBLE_EQ(W({-1.0, -3.0}, WelfareSpec::power_mean(1.0)), -2.0);
  EXPECT_DOUBLE_EQ(W({-1.0, -3.0}, WelfareSpec::power_mean(3.0)),
                   -std::cbrt(14.0));
}

TEST(WelfareTest, PowerMeanMonotoneInRho) {
  const std::vector<double> u = {0.3, 1.2, 2.5};
  double prev = -kInf;
  for (double rho = -10; rho <= 10; rho += 0.5) {
    const double w = W(u, WelfareSpec::power_mean(rho));
    EXPECT_GE(w, prev - 1e-12);
    prev = w;
  }
}

TEST(WelfareTest, GiniSortsAscendingAgainstDecreasingWeights) {
  EXPECT_DOUBLE_EQ(W({3, 1, 2}, WelfareSpec::gini({0.5, 0.3, 0.2})), 1.7);
  EXPECT_DOUBLE_EQ(W({3, 1, 2}, WelfareSpec::gini()), 2.0);
  EXPECT_THROW(W({3, 1, 2}, WelfareSpec::gini({0.2, 0.3, 0.5})),
               std::invalid_argument);
  EXPECT_THROW(W({3, 1, 2}, WelfareSpec::gini({0.5, 0.5, 0.5})),
               std::invalid_argument);
}

TEST(WelfareTest, UtilitarianSumsAndShiftAddsPerPlayer) {
  const auto g = prisoners_dilemma();
  const auto w = welfare_table(g, WelfareSpec::utilitarian());
  EXPECT_EQ(w, (std::vector<double>{-2, -3, -3, -4}));
  const auto shifted = welfare_table(g, WelfareSpec::utilitarian(), 0.5);
  for (std::size_t s = 0; s < w.size(); ++s)
    EXPECT_DOUBLE_EQ(shifted[s], w[s] + 1.0);
}

TEST(AdversarialTest, MaximinByHand) {
  // Player 0: row 0 = (1, -2), row 1 = (0, 0).
  const NormalFormGame g({2, 2}, {1, -2, 0, 0, 0, 0, 0, 0}, 4.0);
  EXPECT_EQ(adversarial_value(g, 0, 0), -2.0);
  EXPECT_EQ(adversarial_value(g, 0, 1), 0.0);
  const auto m = maximin(g, 0);
  EXPECT_EQ(m.value, 0.0);
  EXPECT_EQ(m.strategy, 1u);
}

TEST(LambdaStableTest, PrisonersDilemmaByHand) {
  const auto g = prisoners_dilemma();
  const auto u = WelfareSpec::utilitarian();
  EXPECT_EQ(md_lambda(g, u, 0.0).value, -4.0);
  EXPECT_EQ(mc_lambda(g, u, 0.0).value, -2.0);
  EXPECT_EQ(mc_lambda(g, u, 1.0).value, -3.0);
  EXPECT_EQ(mc_lambda(g, u, 10.0).value, -4.0);
  EXPECT_EQ(mc_lambda(g, u, 10.0).witness, (Profile{1, 1}));
  EXPECT_EQ(md_lambda(g, u, kInf).value, -4.0);
  EXPECT_EQ(mc_lambda(g, u, kInf).value, -4.0);
  EXPECT_EQ(anarchy_gap(g, u, 0.0), 2.0);
  EXPECT_EQ(anarchy_gap(g, u, 1.0), 2.0);
  EXPECT_THROW(md_lambda(g, u, -1.0), std::invalid_argument);
}

TEST(LambdaStableTest, InfiniteLambdaWithoutPureEquilibrium) {
  const NormalFormGame pennies({2, 2}, {1, -1, -1, 1, -1, 1, 1, -1}, 2.0);
  const auto u = WelfareSpec::utilitarian();
  EXPECT_EQ(md_lambda(pennies, u, kInf).value, kInf);
  EXPECT_EQ(mc_lambda(pennies, u, kInf).value, -kInf);
  // Excess regret makes every profile a minimizer.
  EXPECT_EQ(md_lambda(pennies, u, kInf, true).value, 0.0);
}

TEST(LambdaStableTest, LargeLambdaMatchesEquilibriumExtremes) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto g = random_game({3, 3}, 500 + seed);
    if (eps_nash_set(g, 0.0).empty()) continue;
    const auto spec = WelfareSpec::utilitarian();
    const auto range = equilibrium_welfare_range(g, spec);
    EXPECT_DOUBLE_EQ(md_lambda(g, spec, kInf).value, range.lower);
    EXPECT_DOUBLE_EQ(mc_lambda(g, spec, kInf).value, range.upper);
    EXPECT_LE(md_lambda(g, spec, 0.0).value, range.lower);
  }
}

PropertyDescriptor kind_only(PropertyKind kind) {
  PropertyDescriptor d;
  d.kind = kind;
  return d;
}

TEST(LipschitzTest, Registry) {
  EXPECT_EQ(lipschitz_constant(kind_only(PropertyKind::kRegret)).value, 2.0);
  EXPECT_EQ(lipschitz_constant(kind_only(PropertyKind::kExcessRegret)).value, 4.0);
  EXPECT_EQ(lipschitz_constant(kind_only(PropertyKind::kGini)).value, 1.0);
  EXPECT_EQ(lipschitz_constant(kind_only(PropertyKind::kAdversarial)).value, 1.0);
  EXPECT_EQ(welfare_lipschitz(WelfareSpec::utilitarian(), 3).value, 3.0);
  EXPECT_EQ(welfare_lipschitz(WelfareSpec::power_mean(2.0), 3).value, 1.0);
  EXPECT_TRUE(welfare_lipschitz(WelfareSpec::power_mean(0.5), 3).discontinuous);
  EXPECT_TRUE(welfare_lipschitz(WelfareSpec::power_mean(0.0), 3).discontinuous);
  // rho = -1 with uniform weights 1/3: max_p w_p^(1/rho) = 3.
  EXPECT_DOUBLE_EQ(welfare_lipschitz(WelfareSpec::power_mean(-1.0), 3).value,
                   3.0);
  EXPECT_EQ(welfare_lipschitz(WelfareSpec::power_mean(-kInf), 3).value, 1.0);
  PropertyDescriptor ag{PropertyKind::kAnarchyGap, WelfareSpec::utilitarian(),
                        3, 0.5, false};
  EXPECT_EQ(lipschitz_constant(ag).value, 2.0 * (3.0 + 0.5));
  PropertyDescriptor md{PropertyKind::kMdLambda, WelfareSpec::utilitarian(), 3,
                        0.5, false};
  EXPECT_EQ(lipschitz_constant(md).value, 3.0 + 2.0 * 0.5);
  md.use_excess = true;
  EXPECT_EQ(lipschitz_constant(md).value, 3.0 + 4.0 * 0.5);
  EXPECT_DOUBLE_EQ(property_error_bound(2.0, 0.1), 0.2);
  EXPECT_THROW(property_error_bound(kInf, 0.1), std::invalid_argument);
}

// Every Lipschitz claim checked on random pairs of nearby games.
TEST(LipschitzProperty, RandomPerturbations) {
  const auto util = WelfareSpec::utilitarian();
  const auto gini = WelfareSpec::gini({0.5, 0.3, 0.2});
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto g = random_game({2, 3, 2}, 1000 + seed);
    const auto h = jitter(g, 0.2, 2000 + seed);
    const double d = linf_distance(g, h);
    const auto wg = welfare_table(g, gini);
    const auto wh = welfare_table(h, gini);
    for (std::size_t s = 0; s < wg.size(); ++s)
      EXPECT_LE(std::abs(wg[s] - wh[s]), d + 1e-12);
    for (std::size_t p = 0; p < 3; ++p)
      for (std::size_t k = 0; k < g.strategy_count(p); ++k)
        EXPECT_LE(std::abs(adversarial_value(g, p, k) -
                           adversarial_value(h, p, k)),
                  d + 1e-12);
    for (double lam : {0.0, 0.5, 2.0}) {
      EXPECT_LE(std::abs(md_lambda(g, util, lam).value -
                         md_lambda(h, util, lam).value),
                (3.0 + 2.0 * lam) * d + 1e-12);
      EXPECT_LE(std::abs(mc_lambda(g, util, lam).value -
                         mc_lambda(h, util, lam).value),
                (3.0 + 2.0 * lam) * d + 1e-12);
      EXPECT_LE(std::abs(md_lambda(g, util, lam, true).value -
                         md_lambda(h, util, lam, true).value),
                (3.0 + 4.0 * lam) * d + 1e-12);
      EXPECT_LE(std::abs(anarchy_gap(g, util, lam) - anarchy_gap(h, util, lam)),
                2.0 * (3.0 + lam) * d + 1e-12);
    }
  }
}

TEST(WitnessTest, NearOptimalSets) {
  const std::vector<double> v = {3.0, 1.0, 1.5, 4.0};
  EXPECT_EQ(near_optimal_set(v, 0.0, Extremum::kMin),
            (std::vector<std::size_t>{1}));
  EXPECT_EQ(near_optimal_set(v, 0.5, Extremum::kMin),
            (std::vector<std::size_t>{1, 2}));
  EXPECT_EQ(near_optimal_set(v, 1.0, Extremum::kMax),
            (std::vector<std::size_t>{0, 3}));
}

TEST(WitnessProperty, ContainmentUnderPerturbation) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto g = random_game({3, 3, 3}, 3000 + seed);
    const auto h = jitter(g, 0.3, 4000 + seed);
    const double eps = linf_distance(g, h);
    EXPECT_TRUE(witness_containment_check(regret_table(g), regret_table(h),
                                          2.0, eps)
                    .holds());
    const auto spec = WelfareSpec::utilitarian();
    EXPECT_TRUE(witness_containment_check(welfare_table(g, spec),
                                          welfare_table(h, spec), 3.0, eps,
                                          Extremum::kMax)
                    .holds());
  }
}

TEST(BoundsTest, FixtureGamma1) {
  const auto g = fixture_gamma1();
  const auto spec = WelfareSpec::utilitarian();
  const auto range = equilibrium_welfare_range(g, spec);
  EXPECT_EQ(range.lower, -15.0);
  EXPECT_EQ(range.upper, -6.0);
  const auto b = extreme_eq_bounds(g, 0.0, spec);
  EXPECT_EQ(b.lower, -15.0);
  EXPECT_EQ(b.upper, -6.0);
  const auto ppoa = ppoa_estimators(g, 0.0, 0.0);
  EXPECT_NEAR(ppoa.mean, 0.4, 1e-12);
  // Welfare is negative, so ratio bounds are flagged rather than trusted.
  const auto r = ar_sr_bounds(g, 0.0, spec);
  EXPECT_FALSE(r.anarchy_ratio.valid());
  EXPECT_TRUE(r.anarchy_ratio.numerator_nonpositive);
}

TEST(BoundsTest, FixtureGamma2) {
  const auto ppoa = ppoa_estimators(fixture_gamma2(), 0.0, 0.0);
  EXPECT_NEAR(ppoa.mean, 1.0, 1e-12);
}

TEST(BoundsTest, EmptyEquilibriumSetIsFlagged) {
  const NormalFormGame pennies({2, 2}, {1, -1, -1, 1, -1, 1, 1, -1}, 2.0);
  const auto spec = WelfareSpec::utilitarian();
  EXPECT_TRUE(extreme_eq_bounds(pennies, 0.1, spec).empty_equilibrium_set);
  EXPECT_TRUE(ar_sr_bounds(pennies, 0.1, spec).anarchy_ratio
                  .empty_equilibrium_set);
  EXPECT_TRUE(std::isnan(ppoa_estimators(pennies, 0.1, 0.0).mean));
}

// The true extreme equilibrium welfares lie inside bounds computed from any
// eps-approximation.
TEST(BoundsProperty, ExtremeEquilibriaContained) {
  const auto spec = WelfareSpec::utilitarian();
  int checked = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto g = random_game({3, 3, 3}, 5000 + seed);
    const auto nash = eps_nash_set(g, 0.0);
    if (nash.empty()) continue;
    const auto h = jitter(g, 0.2, 6000 + seed);
    const double eps = linf_distance(g, h);
    const auto truth = equilibrium_welfare_range(g, spec);
    const auto b = extreme_eq_bounds(h, eps, spec);
    ASSERT_FALSE(b.empty_equilibrium_set);
    EXPECT_LE(b.lower, truth.lower + 1e-12);
    EXPECT_GE(b.upper, truth.upper - 1e-12);
    ++checked;
  }
  EXPECT_GT(checked, 50);
}

TEST(BoundsProperty, RatioBoundsBracketTruthOnPositiveGames) {
  const auto spec = WelfareSpec::utilitarian();
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto base = random_game({3, 3}, 7000 + seed);
    const auto g = shift_utilities(base, 3.0);  // utilities in [2, 4]
    const auto nash = eps_nash_set(g, 0.0);
    if (nash.empty()) continue;
    const auto w = welfare_table(g, spec);
    const double best = *std::max_element(w.begin(), w.end());
    double lo = kInf, hi = -kInf;
    for (std::size_t s : nash.ranks) {
      lo = std::min(lo, w[s]);
      hi = std::max(hi, w[s]);
    }
    const auto h = jitter(g, 0.05, 8000 + seed);
    const auto r = ar_sr_bounds(h, linf_distance(g, h), spec);
    ASSERT_TRUE(r.anarchy_ratio.valid());
    EXPECT_LE(r.anarchy_ratio.lower, best / lo + 1e-12);
    EXPECT_GE(r.anarchy_ratio.upper, best / lo - 1e-12);
    EXPECT_LE(r.stability_ratio.lower, best / hi + 1e-12);
    EXPECT_GE(r.stability_ratio.upper, best / hi - 1e-12);
  }
}

TEST(CounterexampleTest, WelfareJumpsByC) {
  const auto r = counterexample_gap_demo(0.01, 1.0);
  EXPECT_NEAR(r.distance, 0.02, 1e-15);
  EXPECT_NEAR(std::abs(r.mc_gap), 1.0, 1e-12);
  EXPECT_NEAR(std::abs(r.md_gap), 1.0, 1e-12);
  EXPECT_THROW(counterexample_gap_demo(0.0, 1.0), std::invalid_argument);
}

}  // namespace
}  // namespace egta
