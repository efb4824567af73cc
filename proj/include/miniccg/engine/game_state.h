#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>

#include "miniccg/engine/action.h"
#include "miniccg/engine/cards.h"
#include "miniccg/engine/rng.h"

namespace miniccg {

inline constexpr int kMaxHand = 10;
inline constexpr int kMaxBoard = 7;
inline constexpr int kMaxMana = 10;
inline constexpr int kStartingHp = 30;
inline constexpr int kTurnLimit = 60;

// Final score per player; entries in [0,1] summing to 1.
using Score = std::array<double, 2>;

struct Minion {
  CardId card = 0;
  std::int16_t attack = 0;
  std::int16_t health = 0;
  std::int16_t max_health = 0;
  bool can_attack = false;
  bool taunt = false;
  bool charge = false;

  friend bool operator==(const Minion&, const Minion&) = default;
};

// `generated` marks cards that did not come from the owner's deck (Coin,
// Discover picks). They are left out of deck bookkeeping.
struct HandCard {
  CardId card = 0;
  bool generated = false;

  friend bool operator==(const HandCard&, const HandCard&) = default;
};

struct PlayerState {
  std::int16_t hero_hp = kStartingHp;
  std::uint8_t mana = 0;
  std::uint8_t mana_max = 0;
  std::uint8_t fatigue = 0;
  bool hero_power_used = false;
  bool solver_used = false;
  // Whether UseSolver is offered to this player at all (per-bot setting).
  bool solver_enabled = true;
  StaticVector<HandCard, kMaxHand> hand;
  // Draws come off the back.
  std::array<CardId, kDeckSize> deck{};
  std::uint8_t deck_size = 0;
  StaticVector<Minion, kMaxBoard> board;
  // Deck-origin cards that were played, died or burned.
  std::array<CardId, kDeckSize> graveyard{};
  std::uint8_t graveyard_size = 0;
  // The 30-card list the player started with, in the given order.
  std::array<CardId, kDeckSize> deck_list{};

  int ready_attack() const;
  bool has_taunt() const;

  friend bool operator==(const PlayerState&, const PlayerState&) = default;
};

// Decomposition phase of a multi-step action.
enum class Phase : std::uint8_t {
  Main,
  PlaceMinion,     // PlayCard(minion) chosen; waiting for PlaceTarget
  EffectTarget,    // waiting for the target of pending.card's effect
  ChooseDefender,  // ChooseAttacker chosen; waiting for ChooseDefender
  Discover,        // waiting for Discover(option)
};

struct Pending {
  CardId card = 0;
  bool generated = false;
  std::uint8_t source_slot = 0xff;  // board slot of a battlecry minion
  std::uint8_t attacker = 0;
  std::array<CardId, 3> options{};
  std::uint8_t option_count = 0;

  friend bool operator==(const Pending&, const Pending&) = default;
};

enum class Outcome : std::uint8_t { Ongoing, Player0Wins, Player1Wins, Draw };

struct GameState {
  std::array<PlayerState, 2> players{};
  std::uint8_t active = 0;
  std::uint16_t turn = 1;
  Phase phase = Phase::Main;
  Pending pending{};
  Rng rng{};
  Outcome outcome = Outcome::Ongoing;
  const CardPool* pool = &CardPool::builtin();

  PlayerState& me() { return players[active]; }
  const PlayerState& me() const { return players[active]; }
  PlayerState& foe() { return players[active ^ 1]; }
  const PlayerState& foe() const { return players[active ^ 1]; }

  bool terminal() const { return outcome != Outcome::Ongoing; }

  friend bool operator==(const GameState&, const GameState&) = default;
};

// 64-bit hash over every field, the random stream included.
std::uint64_t state_hash(const GameState& s);

// Returns a description of the first violated type invariant, if any:
// caps, minion health bounds, per-player deck multiset conservation, result
// consistency.
std::optional<std::string> check_invariants(const GameState& s);

// Human-readable dump of the full state (debugging only; reveals everything).
std::string describe(const GameState& s);

}  // namespace miniccg
