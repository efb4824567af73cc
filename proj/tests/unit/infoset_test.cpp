#include <algorithm>
#include <string>
#include <unordered_map>

#include <gtest/gtest.h>

#include "miniccg/engine/errors.h"
#include "miniccg/infoset/determinize.h"
#include "miniccg/infoset/information_set.h"
#include "support.h"

namespace miniccg {
namespace {

using namespace testing;

std::vector<CardId> hidden_pool(const PlayerState& p) {
  std::vector<CardId> out;
  for (const HandCard& c : p.hand) {
    if (!c.generated) out.push_back(c.card);
  }
  out.insert(out.end(), p.deck.begin(), p.deck.begin() + p.deck_size);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<CardId> deck_multiset(const PlayerState& p) {
  std::vector<CardId> out(p.deck.begin(), p.deck.begin() + p.deck_size);
  std::sort(out.begin(), out.end());
  return out;
}

TEST(InformationSet, DeckOrderIsHidden) {
  GameState a = random_walk(fresh(3), 30, 1);
  GameState b = a;
  std::reverse(b.players[0].deck.begin(), b.players[0].deck.begin() + b.players[0].deck_size);
  std::reverse(b.players[1].deck.begin(), b.players[1].deck.begin() + b.players[1].deck_size);
  ASSERT_NE(a, b);
  EXPECT_EQ(capture(a, 0), capture(b, 0));
  EXPECT_EQ(capture(a, 1), capture(b, 1));
}

TEST(InformationSet, OpponentHandIsHiddenOwnHandIsNot) {
  GameState a = fresh(4);
  GameState b = a;
  ASSERT_NE(b.players[1].hand[0].card, card::kFirebolt);
  b.players[1].hand[0].card = card::kFirebolt;
  EXPECT_EQ(capture(a, 0), capture(b, 0));
  EXPECT_NE(capture(a, 1), capture(b, 1));
  EXPECT_NE(capture(a, 1).hash(), capture(b, 1).hash());
}

TEST(InformationSet, PerspectivesDiffer) {
  GameState s = fresh(4);
  EXPECT_EQ(capture(s, 0).perspective(), 0);
  EXPECT_EQ(capture(s, 1).perspective(), 1);
  EXPECT_NE(capture(s, 0), capture(s, 1));
}

TEST(InformationSet, DiscoverOptionsVisibleOnlyToChooser) {
  GameState s = blank();
  s.players[0].hand.push_back({card::kSpellbook, false});
  apply_in_place(s, Action::play_card(0));
  ASSERT_EQ(s.phase, Phase::Discover);
  GameState t = s;
  t.pending.options[0] = t.pending.options[0] == 27 ? 36 : 27;
  if (t.pending.options[0] == t.pending.options[1] || t.pending.options[0] == t.pending.options[2]) {
    t.pending.options[0] = 33;
  }
  EXPECT_EQ(capture(s, 1), capture(t, 1));
  EXPECT_NE(capture(s, 0), capture(t, 0));
}

TEST(InformationSet, FewHashCollisions) {
  std::unordered_map<std::uint64_t, std::string> seen;
  seen.reserve(1 << 21);
  int collisions = 0;
  std::size_t distinct = 0;
  MoveList moves;
  for (std::uint64_t g = 0; distinct < 1'000'000; ++g) {
    GameState s = fresh(g);
    Rng rng(g ^ 0xabcdef);
    while (!s.terminal() && distinct < 1'000'000) {
      for (int p = 0; p < 2; ++p) {
        InformationSet is = capture(s, p);
        std::string bytes(reinterpret_cast<const char*>(is.data()), is.size());
        auto [it, inserted] = seen.emplace(is.hash(), bytes);
        if (inserted) {
          ++distinct;
        } else if (it->second != bytes) {
          ++collisions;
        }
      }
      legal_moves(s, moves);
      apply_in_place(s, moves[rng.below(moves.size())]);
    }
  }
  EXPECT_LT(collisions, 3);
}

TEST(Determinize, CheaterIsIdentity) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    GameState s = random_walk(fresh(seed), 50, seed);
    EXPECT_EQ(determinize(s, 0, DeterminizationMode::Cheater, 99), s);
    EXPECT_EQ(determinize(s, 1, DeterminizationMode::Cheater, 99), s);
  }
}

TEST(Determinize, RandomPreservesMultisetsAndObservation) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    GameState s = random_walk(fresh(seed), static_cast<int>(seed % 200), seed + 7);
    for (int p = 0; p < 2; ++p) {
      GameState d = determinize(s, p, DeterminizationMode::Random, seed * 31 + p);
      EXPECT_EQ(capture(d, p), capture(s, p));
      EXPECT_EQ(hidden_pool(d.players[p ^ 1]), hidden_pool(s.players[p ^ 1]));
      EXPECT_EQ(deck_multiset(d.players[p]), deck_multiset(s.players[p]));
      EXPECT_EQ(d.players[p].hand, s.players[p].hand);
      EXPECT_EQ(d.players[p].board, s.players[p].board);
      EXPECT_EQ(d.players[p ^ 1].board, s.players[p ^ 1].board);
      EXPECT_EQ(d.players[p ^ 1].graveyard, s.players[p ^ 1].graveyard);
      auto bad = check_invariants(d);
      EXPECT_FALSE(bad.has_value()) << *bad;
    }
  }
}

TEST(Determinize, SampledStatesArePlayable) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    GameState s = random_walk(fresh(seed), 60, seed);
    GameState d = determinize(s, s.active, DeterminizationMode::Random, seed);
    EXPECT_EQ(legal_moves(d), legal_moves(s));
    UniformPolicy pol{Rng(seed)};
    PlayoutResult r =
        random_playout(d, [&](const GameState& x, const MoveList& m) { return pol(x, m); });
    EXPECT_TRUE(r.final_state.terminal());
  }
}

TEST(Determinize, TwoHiddenCardsAreUniform) {
  GameState s = blank();
  PlayerState& opp = s.players[1];
  opp.hand.clear();
  opp.hand.push_back({card::kFirebolt, false});
  opp.deck[0] = card::kTaunt;
  opp.deck_size = 1;
  const int n = 20000;
  int firebolt_in_hand = 0;
  for (int i = 0; i < n; ++i) {
    GameState d = determinize(s, 0, DeterminizationMode::Random, static_cast<std::uint64_t>(i));
    firebolt_in_hand += d.players[1].hand[0].card == card::kFirebolt;
  }
  EXPECT_NEAR(firebolt_in_hand / double(n), 0.5, 0.02);
}

TEST(Determinize, ReseedsRandomStream) {
  GameState s = fresh(5);
  GameState a = determinize(s, 0, DeterminizationMode::Random, 1);
  GameState b = determinize(s, 0, DeterminizationMode::Random, 2);
  EXPECT_NE(a.rng, b.rng);
  EXPECT_EQ(determinize(s, 0, DeterminizationMode::Random, 1), a);
}

TEST(Determinize, ParseMode) {
  EXPECT_EQ(parse_determinization("random"), DeterminizationMode::Random);
  EXPECT_EQ(parse_determinization("cheater"), DeterminizationMode::Cheater);
  EXPECT_THROW(parse_determinization("oracle"), ConfigError);
}

}  // namespace
}  // namespace miniccg
