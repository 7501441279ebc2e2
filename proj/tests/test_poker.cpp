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


#include <array>
#include <set>
#include <string>

#include "egta/poker.hpp"
#include "gtest/gtest.h"
#include "poker_reference.hpp"

namespace egta {
namespace {

std::array<Card, 5> hand(const std::string& text) {
  std::vector<std::string> tokens;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const auto end = text.find(' ', pos);
    tokens.push_back(text.substr(pos, end - pos));
    if (end == std::string::npos) break;
    pos = end + 1;
  }
  return parse_hand(tokens);
}

int lib_compare(const std::string& a, const std::string& b) {
  const auto ha = hand(a);
  const auto hb = hand(b);
  const auto x = hand_strength(std::span<const Card, 5>(ha));
  const auto y = hand_strength(std::span<const Card, 5>(hb));
  return x > y ? 1 : x < y ? -1 : 0;
}

TEST(CardTest, Parsing) {
  EXPECT_EQ(parse_card("2C"), 0);
  EXPECT_EQ(parse_card("AS"), 51);
  EXPECT_EQ(parse_card("10H"), 34);
  EXPECT_EQ(parse_card("TD"), 33);
  EXPECT_EQ(parse_card("qd"), 41);
  EXPECT_EQ(card_name(34), "10H");
  for (Card c = 0; c < 52; ++c) EXPECT_EQ(parse_card(card_name(c)), c);
  for (const char* bad : {"1C", "AX", "", "100S", "Z"})
    EXPECT_THROW(parse_card(bad), std::invalid_argument) << bad;
  EXPECT_THROW(hand("AS KS"), std::invalid_argument);
}

TEST(HandStrengthTest, CategoryOrdering) {
  EXPECT_EQ(lib_compare("AS KS QS JS 10S", "9C 9D 9H 9S 2C"), 1);
  EXPECT_EQ(lib_compare("9C 9D 9H 9S 2C", "KC KD KH 2S 2C"), 1);
  EXPECT_EQ(lib_compare("KC KD KH 2S 2C", "2H 5H 7H 9H JH"), 1);
  EXPECT_EQ(lib_compare("2H 5H 7H 9H JH", "6C 7D 8H 9S 10C"), 1);
  EXPECT_EQ(lib_compare("6C 7D 8H 9S 10C", "QC QD QH 2S 3C"), 1);
  EXPECT_EQ(lib_compare("QC QD QH 2S 3C", "AC AD KH KS 3C"), 1);
  EXPECT_EQ(lib_compare("AC AD KH KS 3C", "AC AD 5H 4S 3C"), 1);
  EXPECT_EQ(lib_compare("AC AD 5H 4S 3C", "AC KD QH JS 9C"), 1);
}

TEST(HandStrengthTest, Tiebreaks) {
  // Wheel is the lowest straight.
  EXPECT_EQ(lib_compare("AC 2D 3H 4S 5C", "2C 3D 4H 5S 6C"), -1);
  EXPECT_EQ(hand_category(hand("AC 2D 3H 4S 5C")), HandCategory::kStraight);
  // Kickers after the pair.
  EXPECT_EQ(lib_compare("8C 8D AH 4S 3C", "8H 8S KH QS JC"), 1);
  // Two pair: higher top pair first, then the second pair, then kicker.
  EXPECT_EQ(lib_compare("JC JD 2H 2S 3C", "10C 10D 9H 9S AC"), 1);
  EXPECT_EQ(lib_compare("JC JD 3H 3S 2C", "JH JS 3C 3D 4C"), -1);
  // Full house by the triple.
  EXPECT_EQ(lib_compare("3C 3D 3H 2S 2C", "2H 2D 2S AS AC"), 1);
  // Suits never break ties.
  EXPECT_EQ(lib_compare("AC KD QH JS 9C", "AD KH QS JC 9D"), 0);
}

TEST(HandStrengthProperty, AgreesWithReferenceOnRandomPairs) {
  SplitMix64 rng(2024);
  for (int trial = 0; trial < 20000; ++trial) {
    std::array<Card, 52> deck{};
    for (Card c = 0; c < 52; ++c) deck[c] = c;
    for (int i = 0; i < 10; ++i)
      std::swap(deck[i], deck[i + uniform_below(rng(), 52 - i)]);
    std::array<Card, 5> a{}, b{};
    std::copy(deck.begin(), deck.begin() + 5, a.begin());
    std::copy(deck.begin() + 5, deck.begin() + 10, b.begin());
    const auto x = hand_strength(std::span<const Card, 5>(a));
    const auto y = hand_strength(std::span<const Card, 5>(b));
    const int lib = x > y ? 1 : x < y ? -1 : 0;
    ASSERT_EQ(lib, testing::reference_compare(a, b)) << trial;
  }
}

TEST(CombinatoricsTest, BinomialAndUnrank) {
  EXPECT_EQ(binomial(42, 1), 42u);
  EXPECT_EQ(binomial(42, 2), 861u);
  EXPECT_EQ(binomial(5, 2), 10u);
  EXPECT_EQ(binomial(3, 5), 0u);
  EXPECT_EQ(unrank_combination(0, 5, 2), (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(unrank_combination(1, 5, 2), (std::vector<std::size_t>{0, 2}));
  EXPECT_EQ(unrank_combination(4, 5, 2), (std::vector<std::size_t>{1, 2}));
  EXPECT_EQ(unrank_combination(9, 5, 2), (std::vector<std::size_t>{3, 4}));
  std::set<std::vector<std::size_t>> seen;
  for (std::uint64_t i = 0; i < binomial(7, 3); ++i)
    seen.insert(unrank_combination(i, 7, 3));
  EXPECT_EQ(seen.size(), 35u);
}

class PokerGameTest : public ::testing::Test {
 protected:
  PokerDiscardGame game_{hand("AS KS QS JS 2D"), hand("10H 10C 5D 5S 9C"), 1,
                         PokerTiebreak::kHighCard};
};

TEST_F(PokerGameTest, Shape) {
  EXPECT_EQ(game_.num_profiles(), 25u);
  EXPECT_EQ(game_.num_draws(), 42u);
  EXPECT_EQ(game_.deck().size(), 42u);
  EXPECT_EQ(game_.range(), 2.0);
  EXPECT_EQ(game_.discard_set(3), (std::vector<std::size_t>{3}));
}

// Exact expectation against a dealer enumeration with the reference
// evaluator.
TEST_F(PokerGameTest, ExpectedGameMatchesEnumeration) {
  const auto expected = *game_.expected_game();
  const auto& hands = game_.hands();
  for (std::size_t s0 = 0; s0 < 5; ++s0)
    for (std::size_t s1 = 0; s1 < 5; ++s1) {
      int net = 0;
      for (Card d : game_.deck()) {
        auto a = hands[0];
        auto b = hands[1];
        a[s0] = d;
        b[s1] = d;
        net += testing::reference_compare(a, b);
      }
      const std::size_t s = s0 * 5 + s1;
      EXPECT_EQ(expected.at(0, s), double(net) / 42.0);
      EXPECT_EQ(expected.at(1, s), -double(net) / 42.0);
    }
}

TEST_F(PokerGameTest, ZeroSumAtEveryDraw) {
  std::vector<double> out(2);
  for (std::uint64_t y = 0; y < 2000; ++y)
    for (std::size_t s = 0; s < 25; ++s) {
      game_.evaluate(s, condition_at(9, y), out);
      EXPECT_EQ(out[0] + out[1], 0.0);
      EXPECT_TRUE(out[0] == -1.0 || out[0] == 0.0 || out[0] == 1.0);
    }
}

TEST_F(PokerGameTest, VariancesMatchOutcomeTable) {
  const auto v = *game_.true_variances();
  const auto e = *game_.expected_game();
  for (std::size_t s = 0; s < 25; ++s) {
    double second = 0.0;
    for (std::uint64_t d = 0; d < 42; ++d)
      second += game_.outcome(s, d) * game_.outcome(s, d);
    EXPECT_NEAR(v[s], second / 42.0 - e.at(0, s) * e.at(0, s), 1e-15);
  }
}

TEST(PokerTest, TwoDiscardsAndTiebreakNone) {
  const PokerDiscardGame g(hand("AS KS QS JS 2D"), hand("10H 10C 5D 5S 9C"), 2,
                           PokerTiebreak::kNone);
  EXPECT_EQ(g.num_profiles(), 100u);
  EXPECT_EQ(g.num_draws(), 861u);
  // Without tiebreaks, equal categories tie.
  for (std::size_t s = 0; s < 100; ++s)
    for (std::uint64_t d = 0; d < 861; d += 37) {
      const auto dealer = g.dealer_cards(d);
      const auto a = g.final_hand(0, s / 10, dealer);
      const auto b = g.final_hand(1, s % 10, dealer);
      const auto ka = testing::reference_key(a)[0];
      const auto kb = testing::reference_key(b)[0];
      EXPECT_EQ(g.outcome(s, d), ka > kb ? 1.0 : ka < kb ? -1.0 : 0.0);
    }
}

TEST(PokerTest, RejectsBadInput) {
  EXPECT_THROW(PokerDiscardGame(hand("AS KS QS JS 2D"), hand("AS 10C 5D 5S 9C"),
                                1, PokerTiebreak::kHighCard),
               std::invalid_argument);
  EXPECT_THROW(PokerDiscardGame(hand("AS KS QS JS 2D"), hand("10H 10C 5D 5S 9C"),
                                3, PokerTiebreak::kHighCard),
               std::invalid_argument);
  EXPECT_THROW(parse_tiebreak("suits"), std::invalid_argument);
}

TEST(PokerTest, RandomHandsAreDistinct) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto h = random_hands(seed);
    std::set<Card> cards;
    for (const auto& p : h) cards.insert(p.begin(), p.end());
    EXPECT_EQ(cards.size(), 10u);
  }
}

}  // namespace
}  // namespace egta
