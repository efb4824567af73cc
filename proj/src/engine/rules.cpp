#include "miniccg/engine/rules.h"

#include <algorithm>
#include <string>

#include "miniccg/engine/errors.h"
#include "miniccg/heuristics/board_solver.h"

namespace miniccg {

namespace {

[[noreturn]] void illegal(const GameState& s, Action a, const char* why) {
  throw ContractViolation("illegal action " + to_string(a) + " on turn " + std::to_string(s.turn) + ": " + why);
}

void update_outcome(GameState& s) {
  if (s.outcome != Outcome::Ongoing) return;
  bool dead0 = s.players[0].hero_hp <= 0;
  bool dead1 = s.players[1].hero_hp <= 0;
  if (dead0 && dead1) {
    s.outcome = Outcome::Draw;
  } else if (dead0) {
    s.outcome = Outcome::Player1Wins;
  } else if (dead1) {
    s.outcome = Outcome::Player0Wins;
  }
}

void draw_card(GameState& s, int player) {
  PlayerState& p = s.players[player];
  if (p.deck_size == 0) {
    if (p.fatigue < 255) ++p.fatigue;
    p.hero_hp = static_cast<std::int16_t>(p.hero_hp - p.fatigue);
    return;
  }
  CardId c = p.deck[--p.deck_size];
  if (p.hand.size() >= kMaxHand) {
    p.graveyard[p.graveyard_size++] = c;  // overdraw burn
    return;
  }
  p.hand.push_back({c, false});
}

void give_generated(PlayerState& p, CardId c) {
  if (p.hand.size() < kMaxHand) p.hand.push_back({c, true});
}

// `ref` is relative to the active player.
void damage(GameState& s, std::uint8_t ref, int amount) {
  PlayerState& p = charref::is_enemy(ref) ? s.foe() : s.me();
  if (charref::is_hero(ref)) {
    p.hero_hp = static_cast<std::int16_t>(p.hero_hp - amount);
  } else {
    Minion& m = p.board[charref::minion_index(ref)];
    m.health = static_cast<std::int16_t>(m.health - amount);
  }
}

void resolve_deaths(GameState& s) {
  for (;;) {
    StaticVector<std::pair<std::uint8_t, std::int8_t>, 2 * kMaxBoard> rattles;
    bool any = false;
    for (int k = 0; k < 2; ++k) {
      int owner = s.active ^ k;
      PlayerState& p = s.players[owner];
      for (std::size_t i = 0; i < p.board.size();) {
        const Minion& m = p.board[i];
        if (m.health > 0) {
          ++i;
          continue;
        }
        any = true;
        const CardStats& st = s.pool->stats(m.card);
        if (st.effect == Effect::DeathrattleDraw) rattles.push_back({static_cast<std::uint8_t>(owner), st.amount});
        p.graveyard[p.graveyard_size++] = m.card;
        p.board.erase_at(i);
      }
    }
    if (!any) return;
    for (auto [owner, count] : rattles) {
      for (int n = 0; n < count; ++n) draw_card(s, owner);
    }
  }
}

void start_turn(GameState& s) {
  PlayerState& p = s.me();
  if (p.mana_max < kMaxMana) ++p.mana_max;
  p.mana = p.mana_max;
  p.hero_power_used = false;
  p.solver_used = false;
  for (Minion& m : p.board) m.can_attack = true;
  draw_card(s, s.active);
  update_outcome(s);
}

void end_turn(GameState& s) {
  for (Minion& m : s.me().board) m.can_attack = false;
  ++s.turn;
  if (s.turn > kTurnLimit) {
    s.outcome = Outcome::Draw;
    return;
  }
  s.active ^= 1;
  start_turn(s);
}

bool playable(const GameState& s, const HandCard& hc) {
  const PlayerState& me = s.me();
  const CardStats& st = s.pool->stats(hc.card);
  if (st.cost > me.mana) return false;
  if (st.kind == CardKind::Minion) return me.board.size() < kMaxBoard;
  if (target_rule(st.effect) == TargetRule::FriendlyMinion) return !me.board.empty();
  return true;
}

bool valid_ref(const GameState& s, std::uint8_t ref) {
  if (ref == charref::kOwnHero || ref == charref::kEnemyHero) return true;
  if (ref > 15) return false;
  const PlayerState& p = charref::is_enemy(ref) ? s.foe() : s.me();
  int idx = charref::minion_index(ref);
  return idx >= 0 && idx < static_cast<int>(p.board.size());
}

bool valid_effect_target(const GameState& s, std::uint8_t ref) {
  if (!valid_ref(s, ref)) return false;
  switch (target_rule(s.pool->stats(s.pending.card).effect)) {
    case TargetRule::AnyCharacter: return true;
    case TargetRule::AnyOtherCharacter:
      return !(!charref::is_enemy(ref) && !charref::is_hero(ref) &&
               charref::minion_index(ref) == s.pending.source_slot);
    case TargetRule::FriendlyMinion: return !charref::is_enemy(ref) && !charref::is_hero(ref);
    case TargetRule::None: return false;
  }
  return false;
}

bool valid_defender(const GameState& s, std::uint8_t ref) {
  if (!charref::is_enemy(ref) || !valid_ref(s, ref)) return false;
  if (!s.foe().has_taunt()) return true;
  return !charref::is_hero(ref) && s.foe().board[charref::minion_index(ref)].taunt;
}

void resolve_targeted(GameState& s, std::uint8_t ref) {
  const CardStats& st = s.pool->stats(s.pending.card);
  if (st.effect == Effect::SpellBuff) {
    Minion& m = s.me().board[charref::minion_index(ref)];
    m.attack = static_cast<std::int16_t>(m.attack + st.amount);
    m.health = static_cast<std::int16_t>(m.health + st.amount);
    m.max_health = static_cast<std::int16_t>(m.max_health + st.amount);
  } else {
    damage(s, ref, st.amount);
    resolve_deaths(s);
  }
}

void begin_discover(GameState& s) {
  const auto& pool = s.pool->discover_pool();
  std::array<CardId, kMaxCards> options{};
  auto n = static_cast<std::uint32_t>(pool.size());
  std::copy(pool.begin(), pool.end(), options.begin());
  s.pending.option_count = 3;
  for (std::uint32_t k = 0; k < 3; ++k) {
    std::uint32_t j = k + s.rng.below(n - k);
    std::swap(options[k], options[j]);
    s.pending.options[k] = options[k];
  }
  s.phase = Phase::Discover;
}

void play_card(GameState& s, Action a) {
  PlayerState& me = s.me();
  if (a.arg >= me.hand.size() || !playable(s, me.hand[a.arg])) illegal(s, a, "card not playable");
  HandCard hc = me.hand[a.arg];
  const CardStats& st = s.pool->stats(hc.card);
  me.hand.erase_at(a.arg);
  me.mana = static_cast<std::uint8_t>(me.mana - st.cost);
  s.pending = Pending{};
  s.pending.card = hc.card;
  s.pending.generated = hc.generated;

  if (st.kind == CardKind::Minion) {
    s.phase = Phase::PlaceMinion;
    return;
  }
  if (!hc.generated) me.graveyard[me.graveyard_size++] = hc.card;
  switch (st.effect) {
    case Effect::SpellDamage:
    case Effect::SpellBuff: s.phase = Phase::EffectTarget; break;
    case Effect::SpellAoe:
      for (PlayerState& p : s.players) {
        for (Minion& m : p.board) m.health = static_cast<std::int16_t>(m.health - st.amount);
      }
      resolve_deaths(s);
      break;
    case Effect::SpellDraw:
      for (int n = 0; n < st.amount; ++n) draw_card(s, s.active);
      break;
    case Effect::SpellDiscover: begin_discover(s); break;
    case Effect::Coin: me.mana = static_cast<std::uint8_t>(std::min<int>(kMaxMana, me.mana + st.amount)); break;
    default: break;
  }
}

void place_minion(GameState& s, Action a) {
  PlayerState& me = s.me();
  if (a.arg > me.board.size()) illegal(s, a, "slot out of range");
  CardId c = s.pending.card;
  const CardStats& st = s.pool->stats(c);
  Minion m;
  m.card = c;
  m.attack = st.attack;
  m.health = st.health;
  m.max_health = st.health;
  m.taunt = st.taunt;
  m.charge = st.charge;
  m.can_attack = st.charge;
  me.board.insert_at(a.arg, m);
  s.phase = Phase::Main;
  switch (st.effect) {
    case Effect::BattlecryDamage:
      s.pending.source_slot = a.arg;
      s.phase = Phase::EffectTarget;
      return;
    case Effect::BattlecryRandomDamage: {
      auto targets = static_cast<std::uint32_t>(1 + s.foe().board.size());
      std::uint32_t pick = s.rng.below(targets);
      int amount = 1 + static_cast<int>(s.rng.below(static_cast<std::uint32_t>(st.amount)));
      damage(s, pick == 0 ? charref::kEnemyHero : charref::enemy_minion(static_cast<int>(pick) - 1), amount);
      resolve_deaths(s);
      break;
    }
    default: break;
  }
  s.pending = Pending{};
}

void use_hero_power(GameState& s, Action a) {
  PlayerState& me = s.me();
  CardId power = s.pool->hero_power(s.active);
  const CardStats& st = s.pool->stats(power);
  if (me.hero_power_used || st.cost > me.mana) illegal(s, a, "hero power unavailable");
  me.hero_power_used = true;
  me.mana = static_cast<std::uint8_t>(me.mana - st.cost);
  if (target_rule(st.effect) != TargetRule::None) {
    s.pending = Pending{};
    s.pending.card = power;
    s.phase = Phase::EffectTarget;
    return;
  }
  if (st.effect == Effect::HeroTap) {
    draw_card(s, s.active);
    me.hero_hp = static_cast<std::int16_t>(me.hero_hp - st.amount);
  }
}

void attack(GameState& s, std::uint8_t ref) {
  Minion& attacker = s.me().board[s.pending.attacker];
  attacker.can_attack = false;
  if (charref::is_hero(ref)) {
    damage(s, ref, attacker.attack);
  } else {
    Minion& defender = s.foe().board[charref::minion_index(ref)];
    defender.health = static_cast<std::int16_t>(defender.health - attacker.attack);
    attacker.health = static_cast<std::int16_t>(attacker.health - defender.attack);
  }
  resolve_deaths(s);
}

}  // namespace

int PlayerState::ready_attack() const {
  int total = 0;
  for (const Minion& m : board) {
    if (m.can_attack) total += m.attack;
  }
  return total;
}

bool PlayerState::has_taunt() const {
  for (const Minion& m : board) {
    if (m.taunt) return true;
  }
  return false;
}

GameState new_game(const DeckList& deck0, const DeckList& deck1, std::uint64_t seed, const CardPool& pool) {
  pool.validate_deck(deck0);
  pool.validate_deck(deck1);
  GameState s;
  s.pool = &pool;
  s.rng = Rng(seed);
  const DeckList* decks[2] = {&deck0, &deck1};
  for (int p = 0; p < 2; ++p) {
    PlayerState& ps = s.players[p];
    std::copy(decks[p]->begin(), decks[p]->end(), ps.deck_list.begin());
    ps.deck = ps.deck_list;
    ps.deck_size = kDeckSize;
    s.rng.shuffle(ps.deck.data(), kDeckSize);
  }
  for (int n = 0; n < 3; ++n) draw_card(s, 0);
  for (int n = 0; n < 4; ++n) draw_card(s, 1);
  give_generated(s.players[1], pool.coin());
  s.active = 0;
  s.turn = 1;
  start_turn(s);
  return s;
}

void legal_moves(const GameState& s, MoveList& out) {
  out.clear();
  if (s.terminal()) return;
  const PlayerState& me = s.me();
  switch (s.phase) {
    case Phase::Main: {
      out.push_back(Action::end_turn());
      if (me.solver_enabled && !me.solver_used) out.push_back(Action::use_solver());
      if (!me.hero_power_used && s.pool->stats(s.pool->hero_power(s.active)).cost <= me.mana) {
        out.push_back(Action::hero_power());
      }
      for (std::size_t i = 0; i < me.hand.size(); ++i) {
        if (playable(s, me.hand[i])) out.push_back(Action::play_card(static_cast<int>(i)));
      }
      for (std::size_t i = 0; i < me.board.size(); ++i) {
        const Minion& m = me.board[i];
        if (m.can_attack && m.attack > 0) out.push_back(Action::choose_attacker(static_cast<int>(i)));
      }
      break;
    }
    case Phase::PlaceMinion:
      for (std::size_t slot = 0; slot <= me.board.size(); ++slot) out.push_back(Action::place(static_cast<int>(slot)));
      break;
    case Phase::EffectTarget: {
      TargetRule rule = target_rule(s.pool->stats(s.pending.card).effect);
      if (rule != TargetRule::FriendlyMinion) out.push_back(Action::effect_target(charref::kOwnHero));
      for (std::size_t i = 0; i < me.board.size(); ++i) {
        if (rule == TargetRule::AnyOtherCharacter && i == s.pending.source_slot) continue;
        out.push_back(Action::effect_target(charref::own_minion(static_cast<int>(i))));
      }
      if (rule != TargetRule::FriendlyMinion) {
        out.push_back(Action::effect_target(charref::kEnemyHero));
        for (std::size_t i = 0; i < s.foe().board.size(); ++i) {
          out.push_back(Action::effect_target(charref::enemy_minion(static_cast<int>(i))));
        }
      }
      break;
    }
    case Phase::ChooseDefender: {
      const PlayerState& foe = s.foe();
      bool taunt = foe.has_taunt();
      if (!taunt) out.push_back(Action::choose_defender(charref::kEnemyHero));
      for (std::size_t i = 0; i < foe.board.size(); ++i) {
        if (!taunt || foe.board[i].taunt) out.push_back(Action::choose_defender(charref::enemy_minion(static_cast<int>(i))));
      }
      break;
    }
    case Phase::Discover:
      for (int i = 0; i < s.pending.option_count; ++i) out.push_back(Action::discover(i));
      break;
  }
}

MoveList legal_moves(const GameState& s) {
  MoveList out;
  legal_moves(s, out);
  return out;
}

bool is_legal(const GameState& s, Action a) {
  MoveList moves;
  legal_moves(s, moves);
  return std::find(moves.begin(), moves.end(), a) != moves.end();
}

void apply_in_place(GameState& s, Action a) {
  if (s.terminal()) illegal(s, a, "game is over");
  bool main = s.phase == Phase::Main;
  switch (a.kind) {
    case ActionKind::EndTurn:
      if (!main) illegal(s, a, "mid-action");
      end_turn(s);
      break;
    case ActionKind::UseSolver: {
      PlayerState& me = s.me();
      if (!main || !me.solver_enabled || me.solver_used) illegal(s, a, "solver unavailable");
      std::vector<Action> plan = solve_board(s);
      me.solver_used = true;
      for (Action step : plan) {
        if (s.terminal()) break;
        apply_in_place(s, step);
      }
      break;
    }
    case ActionKind::HeroPower:
      if (!main) illegal(s, a, "mid-action");
      use_hero_power(s, a);
      break;
    case ActionKind::PlayCard:
      if (!main) illegal(s, a, "mid-action");
      play_card(s, a);
      break;
    case ActionKind::ChooseAttacker: {
      const PlayerState& me = s.me();
      if (!main || a.arg >= me.board.size() || !me.board[a.arg].can_attack || me.board[a.arg].attack <= 0) {
        illegal(s, a, "minion cannot attack");
      }
      s.pending = Pending{};
      s.pending.attacker = a.arg;
      s.phase = Phase::ChooseDefender;
      break;
    }
    case ActionKind::PlaceTarget:
      if (s.phase != Phase::PlaceMinion) illegal(s, a, "nothing to place");
      place_minion(s, a);
      break;
    case ActionKind::EffectTarget:
      if (s.phase != Phase::EffectTarget || !valid_effect_target(s, a.arg)) illegal(s, a, "invalid effect target");
      resolve_targeted(s, a.arg);
      s.phase = Phase::Main;
      s.pending = Pending{};
      break;
    case ActionKind::ChooseDefender:
      if (s.phase != Phase::ChooseDefender || !valid_defender(s, a.arg)) illegal(s, a, "invalid defender");
      attack(s, a.arg);
      s.phase = Phase::Main;
      s.pending = Pending{};
      break;
    case ActionKind::Discover:
      if (s.phase != Phase::Discover || a.arg >= s.pending.option_count) illegal(s, a, "invalid discover option");
      give_generated(s.me(), s.pending.options[a.arg]);
      s.phase = Phase::Main;
      s.pending = Pending{};
      break;
  }
  update_outcome(s);
}

GameState apply(GameState s, Action a) {
  apply_in_place(s, a);
  return s;
}

std::optional<Score> result(const GameState& s) {
  switch (s.outcome) {
    case Outcome::Ongoing: return std::nullopt;
    case Outcome::Player0Wins: return Score{1.0, 0.0};
    case Outcome::Player1Wins: return Score{0.0, 1.0};
    case Outcome::Draw: return Score{0.5, 0.5};
  }
  return std::nullopt;
}

PlayoutResult random_playout(GameState s, const SimulationPolicy& policy, const CutoffRule& cutoff) {
  PlayoutResult out;
  if (cutoff) {
    out.score = run_playout(s, policy, cutoff, &out.steps);
  } else {
    out.score = run_playout(s, policy, NoCutoff{}, &out.steps);
  }
  out.final_state = s;
  return out;
}

}  // namespace miniccg
