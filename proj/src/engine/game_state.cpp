#include "miniccg/engine/game_state.h"

#include <algorithm>
#include <sstream>

#include "miniccg/engine/hashing.h"

namespace miniccg {

std::uint64_t state_hash(const GameState& s) {
  Hasher h;
  for (const PlayerState& p : s.players) {
    h.add(static_cast<std::uint16_t>(p.hero_hp) | std::uint64_t{p.mana} << 16 | std::uint64_t{p.mana_max} << 24 |
          std::uint64_t{p.fatigue} << 32 | std::uint64_t{p.hero_power_used} << 40 | std::uint64_t{p.solver_used} << 41 |
          std::uint64_t{p.solver_enabled} << 42 | std::uint64_t{p.deck_size} << 48 |
          std::uint64_t{p.graveyard_size} << 56);
    h.add(p.hand.size());
    for (const HandCard& c : p.hand) h.add(c.card | std::uint64_t{c.generated} << 8);
    h.add_bytes({p.deck.data(), p.deck_size});
    h.add(p.board.size());
    for (const Minion& m : p.board) {
      h.add(m.card | std::uint64_t(static_cast<std::uint16_t>(m.attack)) << 8 |
            std::uint64_t(static_cast<std::uint16_t>(m.health)) << 24 |
            std::uint64_t(static_cast<std::uint16_t>(m.max_health)) << 40 | std::uint64_t{m.can_attack} << 56 |
            std::uint64_t{m.taunt} << 57 | std::uint64_t{m.charge} << 58);
    }
    h.add_bytes({p.graveyard.data(), p.graveyard_size});
    h.add_bytes({p.deck_list.data(), p.deck_list.size()});
  }
  h.add(s.active | std::uint64_t{s.turn} << 8 | std::uint64_t(s.phase) << 24 | std::uint64_t(s.outcome) << 32);
  const Pending& pd = s.pending;
  h.add(pd.card | std::uint64_t{pd.generated} << 8 | std::uint64_t{pd.source_slot} << 16 |
        std::uint64_t{pd.attacker} << 24 | std::uint64_t{pd.option_count} << 32 | std::uint64_t{pd.options[0]} << 40 |
        std::uint64_t{pd.options[1]} << 48 | std::uint64_t{pd.options[2]} << 56);
  h.add(s.rng.seed());
  h.add(s.rng.counter());
  return h.digest();
}

std::optional<std::string> check_invariants(const GameState& s) {
  auto fail = [](const std::string& what) { return std::optional<std::string>(what); };
  if (s.active > 1) return fail("active player out of range");
  if (s.turn < 1 || s.turn > kTurnLimit + 1) return fail("turn out of range");
  for (int pi = 0; pi < 2; ++pi) {
    const PlayerState& p = s.players[pi];
    std::string who = "player " + std::to_string(pi) + ": ";
    if (p.hero_hp > kStartingHp) return fail(who + "hero hp above 30");
    if (p.mana > kMaxMana || p.mana_max > kMaxMana) return fail(who + "mana above 10");
    if (p.hand.size() > kMaxHand) return fail(who + "hand above 10");
    if (p.board.size() > kMaxBoard) return fail(who + "board above 7");
    if (p.deck_size > kDeckSize) return fail(who + "deck above 30");
    for (const Minion& m : p.board) {
      if (m.health < 1 || m.health > m.max_health) return fail(who + "minion health outside [1, max]");
      if (m.attack < 0) return fail(who + "negative attack");
    }
    std::array<int, kMaxCards> count{};
    for (CardId c : p.deck_list) ++count[c];
    auto take = [&](CardId c) { --count[c]; };
    for (const HandCard& c : p.hand) {
      if (!c.generated) take(c.card);
    }
    for (int i = 0; i < p.deck_size; ++i) take(p.deck[i]);
    for (const Minion& m : p.board) take(m.card);
    for (int i = 0; i < p.graveyard_size; ++i) take(p.graveyard[i]);
    if (pi == s.active && s.phase == Phase::PlaceMinion && !s.pending.generated) take(s.pending.card);
    if (std::any_of(count.begin(), count.end(), [](int n) { return n != 0; })) {
      return fail(who + "deck multiset not conserved");
    }
  }
  bool dead = s.players[0].hero_hp <= 0 || s.players[1].hero_hp <= 0;
  bool over_limit = s.turn > kTurnLimit;
  if (s.terminal() != (dead || over_limit)) return fail("outcome inconsistent with hero health / turn limit");
  return std::nullopt;
}

std::string describe(const GameState& s) {
  std::ostringstream out;
  const CardPool& pool = *s.pool;
  out << "turn " << s.turn << ", player " << int(s.active) << " to act";
  if (s.terminal()) out << " (game over)";
  out << "\n";
  for (int pi = 0; pi < 2; ++pi) {
    const PlayerState& p = s.players[pi];
    out << "P" << pi << " hp " << p.hero_hp << " mana " << int(p.mana) << "/" << int(p.mana_max) << " deck "
        << int(p.deck_size) << " fatigue " << int(p.fatigue) << "\n  hand:";
    for (const HandCard& c : p.hand) out << " [" << pool.card(c.card).name << "]";
    out << "\n  board:";
    for (const Minion& m : p.board) {
      out << " [" << pool.card(m.card).name << " " << m.attack << "/" << m.health << (m.taunt ? " T" : "")
          << (m.can_attack ? " *" : "") << "]";
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace miniccg
