#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "miniccg/engine/action.h"
#include "miniccg/engine/game_state.h"

namespace miniccg {

// Material count used by the solver: sum of (attack + health) over the
// player's minions plus half the hero's health.
double board_potential(const GameState& s, int player);

// A single attack, scored by how much it lowers the enemy potential minus
// how much it lowers our own.
struct AttackPair {
  std::uint8_t attacker = 0;  // own board index
  std::uint8_t defender = 0;  // CharRef (enemy hero or enemy minion)
  double score = 0.0;
};

// Scores every currently legal (attacker, defender) pair.
std::vector<AttackPair> score_attacks(const GameState& s);

// Lethal through attacks alone, honouring Taunt. Returns the
// ChooseAttacker/ChooseDefender sequence, or nothing if no assignment of
// ready attackers kills the enemy hero this turn.
std::optional<std::vector<Action>> find_lethal(const GameState& s);

// Attack plan for the active player, as ChooseAttacker/ChooseDefender pairs
// valid at their point of application:
//   1. lethal if one exists;
//   2. otherwise, if the enemy board threatens lethal next turn, kill enemy
//      minions in descending attack order until the threat is gone;
//   3. remaining attackers go greedily through the scored pairs, best
//      first, re-checking legality after every attack, until no attack is
//      legal.
// Empty outside the Main phase or with no ready attackers.
std::vector<Action> solve_board(const GameState& s);

// apply(s, UseSolver): runs the plan and marks the solver used this turn.
GameState use_solver_action(const GameState& s);

}  // namespace miniccg
