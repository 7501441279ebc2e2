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

// Two-player discard poker. Each player holds five known cards and
// simultaneously discards k of them; the dealer then turns up k cards from
// the remaining 42, shared by both players, and the better five-card hand
// scores +1 against -1.

#ifndef EGTA_POKER_HPP_
#define EGTA_POKER_HPP_

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "egta/nfg.hpp"
#include "egta/oracle.hpp"
#include "egta/rng.hpp"

namespace egta {

// Card id = rank * 4 + suit; rank 0 is a deuce, 12 an ace; suits C, D, H, S.
using Card = int;

inline constexpr char kSuits[] = {'C', 'D', 'H', 'S'};

inline int card_rank(Card c) { return c / 4; }
inline int card_suit(Card c) { return c % 4; }

inline Card parse_card(const std::string& token) {
  if (token.size() < 2 || token.size() > 3)
    throw std::invalid_argument("bad card: " + token);
  const std::string r = token.substr(0, token.size() - 1);
  const char s = char(std::toupper(static_cast<unsigned char>(token.back())));
  int rank = -1;
  if (r == "10" || r == "T" || r == "t") {
    rank = 8;
  } else if (r.size() == 1 && r[0] >= '2' && r[0] <= '9') {
    rank = r[0] - '2';
  } else if (r.size() == 1) {
    switch (std::toupper(static_cast<unsigned char>(r[0]))) {
      case 'J': rank = 9; break;
      case 'Q': rank = 10; break;
      case 'K': rank = 11; break;
      case 'A': rank = 12; break;
    }
  }
  const auto* it = std::find(std::begin(kSuits), std::end(kSuits), s);
  if (rank < 0 || it == std::end(kSuits))
    throw std::invalid_argument("bad card: " + token);
  return rank * 4 + int(it - std::begin(kSuits));
}

inline std::string card_name(Card c) {
  static const char* kRanks[] = {"2", "3", "4", "5", "6", "7", "8",
                                 "9", "10", "J", "Q", "K", "A"};
  return std::string(kRanks[card_rank(c)]) + kSuits[card_suit(c)];
}

enum class HandCategory {
  kHighCard,
  kPair,
  kTwoPair,
  kThreeOfAKind,
  kStraight,
  kFlush,
  kFullHouse,
  kFourOfAKind,
  kStraightFlush,
};

// Totally ordered hand strength: category in bits 20+, then up to five rank
// nibbles in comparison order (e.g. trips rank, then kickers high to low).
inline std::uint32_t hand_strength(std::span<const Card, 5> hand) {
  std::array<int, 13> count{};
  bool flush = true;
  for (Card c : hand) {
    ++count[card_rank(c)];
    flush = flush && card_suit(c) == card_suit(hand[0]);
  }
  // Ranks ordered by (multiplicity, rank), both descending.
  std::array<int, 5> order{};
  int n = 0;
  for (int mult = 4; mult >= 1; --mult)
    for (int r = 12; r >= 0; --r)
      if (count[r] == mult) order[n++] = r;

  int straight_high = -1;
  if (n == 5) {
    if (order[0] - order[4] == 4) straight_high = order[0];
    else if (order[0] == 12 && order[1] == 3) straight_high = 3;  // A-2-3-4-5
  }

  HandCategory cat = HandCategory::kHighCard;
  const int top = count[order[0]];
  if (straight_high >= 0 && flush) cat = HandCategory::kStraightFlush;
  else if (top == 4) cat = HandCategory::kFourOfAKind;
  else if (top == 3 && n == 2) cat = HandCategory::kFullHouse;
  else if (flush) cat = HandCategory::kFlush;
  else if (straight_high >= 0) cat = HandCategory::kStraight;
  else if (top == 3) cat = HandCategory::kThreeOfAKind;
  else if (top == 2 && n == 3) cat = HandCategory::kTwoPair;
  else if (top == 2) cat = HandCategory::kPair;

  std::uint32_t score = std::uint32_t(cat) << 20;
  if (straight_high >= 0) return score | std::uint32_t(straight_high) << 16;
  for (int i = 0; i < n; ++i) score |= std::uint32_t(order[i]) << (16 - 4 * i);
  return score;
}

inline HandCategory hand_category(std::span<const Card, 5> hand) {
  return HandCategory(hand_strength(hand) >> 20);
}

enum class PokerTiebreak { kHighCard, kNone };

inline PokerTiebreak parse_tiebreak(const std::string& s) {
  if (s == "high_card") return PokerTiebreak::kHighCard;
  if (s == "none") return PokerTiebreak::kNone;
  throw std::invalid_argument("unknown tiebreak: " + s);
}

inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// The `index`-th k-subset of {0..n-1} in lexicographic order.
inline std::vector<std::size_t> unrank_combination(std::uint64_t index,
                                                   std::size_t n,
                                                   std::size_t k) {
  std::vector<std::size_t> out;
  std::size_t next = 0;
  for (std::size_t slot = 0; slot < k; ++slot) {
    for (;; ++next) {
      const std::uint64_t rest = binomial(n - next - 1, k - slot - 1);
      if (index < rest) break;
      index -= rest;
    }
    out.push_back(next++);
  }
  return out;
}

class PokerDiscardGame : public ConditionalGame {
 public:
  PokerDiscardGame(std::array<Card, 5> hand1, std::array<Card, 5> hand2,
                   std::size_t k, PokerTiebreak tiebreak)
      : ConditionalGame({binomial(5, k), binomial(5, k)}, 2.0),
        hands_{hand1, hand2},
        k_(k),
        tiebreak_(tiebreak) {
    if (k != 1 && k != 2) throw std::invalid_argument("k must be 1 or 2");
    std::array<bool, 52> used{};
    for (const auto& h : hands_)
      for (Card c : h) {
        if (c < 0 || c >= 52) throw std::invalid_argument("bad card id");
        if (used[c])
          throw std::invalid_argument("duplicate card " + card_name(c));
        used[c] = true;
      }
    for (Card c = 0; c < 52; ++c)
      if (!used[c]) deck_.push_back(c);
    num_draws_ = binomial(deck_.size(), k_);
    for (std::uint64_t j = 0; j < binomial(5, k_); ++j)
      discards_.push_back(unrank_combination(j, 5, k_));
    tabulate();
  }

  std::size_t discards() const { return k_; }
  PokerTiebreak tiebreak() const { return tiebreak_; }
  const std::array<std::array<Card, 5>, 2>& hands() const { return hands_; }
  // Cards not in either hand, ascending.
  const std::vector<Card>& deck() const { return deck_; }
  std::uint64_t num_draws() const { return num_draws_; }
  // Positions in the hand discarded by `strategy`.
  const std::vector<std::size_t>& discard_set(std::size_t strategy) const {
    return discards_.at(strategy);
  }

  // Dealer draw selected by a condition: a uniform subset index.
  std::uint64_t draw_index(std::uint64_t condition) const {
    return uniform_below(condition, num_draws_);
  }

  std::vector<Card> dealer_cards(std::uint64_t draw) const {
    std::vector<Card> out;
    for (std::size_t i : unrank_combination(draw, deck_.size(), k_))
      out.push_back(deck_[i]);
    return out;
  }

  // Player 0's payoff in {-1, 0, +1} at a profile rank and dealer draw.
  double outcome(std::size_t rank, std::uint64_t draw) const {
    return table_[rank * num_draws_ + draw];
  }

  using ConditionalGame::evaluate;
  void evaluate(std::size_t rank, std::uint64_t condition,
                std::span<double> out) const override {
    const double u = outcome(rank, draw_index(condition));
    out[0] = u;
    out[1] = -u;
  }

  std::optional<NormalFormGame> expected_game() const override {
    return expected_;
  }
  std::optional<std::vector<double>> true_variances() const override {
    return variances_;
  }

  // Five-card hand of `player` under a strategy and dealer cards.
  std::array<Card, 5> final_hand(std::size_t player, std::size_t strategy,
                                 const std::vector<Card>& dealer) const {
    std::array<Card, 5> h{};
    std::size_t n = 0;
    const auto& drop = discards_[strategy];
    for (std::size_t i = 0; i < 5; ++i)
      if (std::find(drop.begin(), drop.end(), i) == drop.end())
        h[n++] = hands_[player][i];
    for (Card c : dealer) h[n++] = c;
    return h;
  }

 private:
  double score(const std::array<Card, 5>& a,
               const std::array<Card, 5>& b) const {
    std::uint32_t x = hand_strength(a);
    std::uint32_t y = hand_strength(b);
    if (tiebreak_ == PokerTiebreak::kNone) {
      x >>= 20;
      y >>= 20;
    }
    return x > y ? 1.0 : x < y ? -1.0 : 0.0;
  }

  void tabulate() {
    const std::size_t profiles = num_profiles();
    const std::size_t k = discards_.size();
    table_.resize(profiles * num_draws_);
    std::vector<double> mean(2 * profiles), var(2 * profiles);
    for (std::uint64_t draw = 0; draw < num_draws_; ++draw) {
      const auto dealer = dealer_cards(draw);
      for (std::size_t s = 0; s < profiles; ++s)
        table_[s * num_draws_ + draw] = score(final_hand(0, s / k, dealer),
                                              final_hand(1, s % k, dealer));
    }
    for (std::size_t s = 0; s < profiles; ++s) {
      // Integer tallies keep the expectation exact up to the final divide.
      long wins = 0, decided = 0;
      for (std::uint64_t draw = 0; draw < num_draws_; ++draw) {
        const double u = table_[s * num_draws_ + draw];
        wins += long(u);
        decided += u != 0.0;
      }
      const double m = double(wins) / double(num_draws_);
      const double second = double(decided) / double(num_draws_);
      mean[s] = m;
      mean[profiles + s] = -m;
      var[s] = var[profiles + s] = std::max(0.0, second - m * m);
    }
    expected_ = NormalFormGame(space().strategy_counts(), std::move(mean), 2.0);
    variances_ = std::move(var);
  }

  std::array<std::array<Card, 5>, 2> hands_;
  std::size_t k_;
  PokerTiebreak tiebreak_;
  std::vector<Card> deck_;
  std::uint64_t num_draws_ = 0;
  std::vector<std::vector<std::size_t>> discards_;
  std::vector<double> table_;  // profile-major outcome table
  NormalFormGame expected_;
  std::vector<double> variances_;
};

inline std::array<Card, 5> parse_hand(const std::vector<std::string>& tokens) {
  if (tokens.size() != 5)
    throw std::invalid_argument("a hand needs exactly five cards");
  std::array<Card, 5> h{};
  for (std::size_t i = 0; i < 5; ++i) h[i] = parse_card(tokens[i]);
  return h;
}

// Five distinct cards per player drawn from a seeded deck shuffle.
inline std::array<std::array<Card, 5>, 2> random_hands(std::uint64_t seed) {
  std::array<Card, 52> deck{};
  for (Card c = 0; c < 52; ++c) deck[c] = c;
  SplitMix64 rng(mix64(seed, 0x706f6b72ULL));
  for (std::size_t i = 0; i < 10; ++i)
    std::swap(deck[i], deck[i + uniform_below(rng(), 52 - i)]);
  std::array<std::array<Card, 5>, 2> out{};
  for (std::size_t i = 0; i < 10; ++i) out[i / 5][i % 5] = deck[i];
  return out;
}

inline PokerDiscardGame gen_poker_discard(std::array<Card, 5> hand1,
                                          std::array<Card, 5> hand2,
                                          std::size_t k,
                                          PokerTiebreak tiebreak) {
  return PokerDiscardGame(hand1, hand2, k, tiebreak);
}

}  // namespace egta

#endif  // EGTA_POKER_HPP_
