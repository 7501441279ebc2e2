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

#include "egta/generators.hpp"
#include "egta/oracle.hpp"
#include "gtest/gtest.h"
#include "test_util.hpp"

namespace egta {
namespace {

TEST(AdditiveNoiseTest, ObservationsAreMeanPlusSignedHalfWidth) {
  const auto base = testing::random_game({3, 2}, 4);
  const AdditiveNoiseGame g(base, {2.0, 1.5, 3.0, {}}, 99);
  EXPECT_EQ(g.range(), base.range() + 2.0);
  const auto var = *g.true_variances();
  const auto& scales = g.noise().scales;
  ASSERT_EQ(scales.size(), base.num_indices());
  std::vector<double> out(2);
  for (std::uint64_t y = 0; y < 50; ++y)
    for (std::size_t s = 0; s < base.num_profiles(); ++s) {
      g.evaluate(s, condition_at(1, y), out);
      for (std::size_t p = 0; p < 2; ++p) {
        const std::size_t i = base.flat_index(p, s);
        EXPECT_GE(scales[i], 0.0);
        EXPECT_LE(scales[i], 1.0);
        EXPECT_NEAR(std::abs(out[p] - base.at(p, s)), scales[i], 1e-12);
        EXPECT_NEAR(var[i], scales[i] * scales[i], 1e-15);
      }
    }
}

TEST(AdditiveNoiseTest, ExplicitScalesAndDeterminism) {
  const auto base = testing::random_game({2, 2}, 6);
  const AdditiveNoiseGame a(base, {4.0, 1, 1, {0.0, 0.5, 1.0, 0.25, 0, 0, 0, 0}},
                            3);
  const AdditiveNoiseGame b(base, {4.0, 1, 1, {0.0, 0.5, 1.0, 0.25, 0, 0, 0, 0}},
                            3);
  EXPECT_EQ((*a.true_variances())[2], 4.0);
  for (std::uint64_t y = 0; y < 20; ++y)
    EXPECT_EQ(a.evaluate(Profile{1, 0}, y), b.evaluate(Profile{1, 0}, y));
  EXPECT_EQ(a.evaluate(Profile{0, 0}, 5)[0], base.at(0, 0));
  EXPECT_THROW(AdditiveNoiseGame(base, {1.0, 1, 1, {0.5}}, 0),
               std::invalid_argument);
}

TEST(AdditiveNoiseTest, SignsAreBalanced) {
  const auto base = testing::random_game({1}, 1);
  const AdditiveNoiseGame g(base, {2.0, 1, 1, {1.0}}, 12);
  double sum = 0.0;
  const int n = 200000;
  for (int y = 0; y < n; ++y) sum += g.evaluate(Profile{0}, condition_at(2, y))[0];
  // Mean of n fair signs: 5 sigma is 5 / sqrt(n).
  EXPECT_NEAR(sum / n, base.at(0, 0), 5.0 / std::sqrt(double(n)));
}

TEST(DeterministicGameTest, ZeroVariance) {
  const auto base = testing::random_game({2, 3}, 2);
  const DeterministicGame g(base);
  EXPECT_EQ(*g.expected_game(), base);
  const auto variances = *g.true_variances();
  for (double v : variances) EXPECT_EQ(v, 0.0);
}

TEST(ProfileMaxVariancesTest, MaxOverPlayers) {
  const std::vector<double> v = {0.1, 0.4, 0.3, 0.2, 0.0, 0.5};
  EXPECT_THROW(profile_max_variances(ProfileSpace({2, 2}), v),
               std::invalid_argument);
  const auto m = profile_max_variances(ProfileSpace({3}), {0.1, 0.4, 0.3});
  EXPECT_EQ(m, (std::vector<double>{0.1, 0.4, 0.3}));
}

}  // namespace
}  // namespace egta
