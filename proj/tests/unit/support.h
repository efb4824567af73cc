#pragma once

#include <cstdint>
#include <vector>

#include "miniccg/engine/rules.h"

namespace miniccg::testing {

inline const DeckList& aggro() { return CardPool::builtin().deck("Aggro"); }
inline const DeckList& control() { return CardPool::builtin().deck("Control"); }

inline GameState fresh(std::uint64_t seed = 1) { return new_game(aggro(), control(), seed); }

// A started game with both hands and boards emptied; decks are untouched.
inline GameState blank(std::uint64_t seed = 1) {
  GameState s = fresh(seed);
  for (auto& p : s.players) {
    p.hand.clear();
    p.board.clear();
    p.solver_enabled = false;
  }
  s.players[0].mana = s.players[0].mana_max = 10;
  return s;
}

inline Minion minion(CardId card, bool ready = true) {
  const CardStats& st = CardPool::builtin().stats(card);
  Minion m;
  m.card = card;
  m.attack = st.attack;
  m.health = st.health;
  m.max_health = st.health;
  m.taunt = st.taunt;
  m.charge = st.charge;
  m.can_attack = ready;
  return m;
}

inline Minion minion(CardId card, int attack, int health, bool ready = true, bool taunt = false) {
  Minion m = minion(card, ready);
  m.attack = static_cast<std::int16_t>(attack);
  m.health = m.max_health = static_cast<std::int16_t>(health);
  m.taunt = taunt;
  return m;
}

// Plays uniformly random moves for `steps` actions (or until the end).
inline GameState random_walk(GameState s, int steps, std::uint64_t seed) {
  Rng rng(seed);
  MoveList moves;
  for (int i = 0; i < steps && !s.terminal(); ++i) {
    legal_moves(s, moves);
    apply_in_place(s, moves[rng.below(moves.size())]);
  }
  return s;
}

// Card ids used by the tests.
namespace card {
inline constexpr CardId kCoin = 0;
inline constexpr CardId kVanilla12 = 3;    // 1-cost 1/2
inline constexpr CardId kStoneTusk = 5;    // 2/3
inline constexpr CardId kHillOgre = 9;     // 4-cost 4/5
inline constexpr CardId kTaunt = 14;
inline constexpr CardId kCharge11 = 18;    // 1-cost 1/1 charge
inline constexpr CardId kWolfRider = 19;   // 3/1 charge
inline constexpr CardId kShadowAgent = 21; // battlecry deal 2
inline constexpr CardId kJuggler = 23;     // battlecry 1..3 random
inline constexpr CardId kLootHoarder = 25; // deathrattle draw
inline constexpr CardId kFirebolt = 27;    // deal 2
inline constexpr CardId kShockwave = 31;   // 2 to all minions
inline constexpr CardId kStudy = 33;       // draw 2
inline constexpr CardId kBlessing = 34;    // +2/+2
inline constexpr CardId kSpellbook = 35;   // discover
inline constexpr CardId kArcaneMissile = 36;
}  // namespace card

}  // namespace miniccg::testing
