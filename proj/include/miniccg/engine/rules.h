#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>

#include "miniccg/engine/game_state.h"

namespace miniccg {

// Shuffles both decks with the seeded stream, deals opening hands (3 cards to
// player 0, 4 plus the Coin to player 1) and starts player 0's first turn,
// which draws its fourth card. Throws ConfigError for malformed decks.
GameState new_game(const DeckList& deck0, const DeckList& deck1, std::uint64_t seed,
                   const CardPool& pool = CardPool::builtin());

// Moves in ascending ordinal order. Empty iff the state is terminal.
void legal_moves(const GameState& s, MoveList& out);
MoveList legal_moves(const GameState& s);
bool is_legal(const GameState& s, Action a);

// Applies `a` in place, resolving every triggered effect. Throws
// ContractViolation if `a` is not legal.
void apply_in_place(GameState& s, Action a);
GameState apply(GameState s, Action a);

std::optional<Score> result(const GameState& s);

// Picks a move from a non-empty legal move list.
using SimulationPolicy = std::function<Action(const GameState&, const MoveList&)>;
// Called after every playout step with the running step count and the move
// just applied; a value ends the playout with that score.
using CutoffRule = std::function<std::optional<Score>(const GameState&, int steps, Action last)>;

struct PlayoutResult {
  Score score{};
  GameState final_state;
  int steps = 0;
};

PlayoutResult random_playout(GameState s, const SimulationPolicy& policy, const CutoffRule& cutoff = nullptr);

// Hot-path variant for callers that know their policy and cutoff types.
template <typename Policy, typename Cutoff>
Score run_playout(GameState& s, Policy&& policy, Cutoff&& cutoff, int* steps_out = nullptr) {
  MoveList moves;
  int steps = 0;
  while (!s.terminal()) {
    legal_moves(s, moves);
    Action a = policy(s, static_cast<const MoveList&>(moves));
    apply_in_place(s, a);
    ++steps;
    if (std::optional<Score> early = cutoff(s, steps, a)) {
      if (steps_out) *steps_out = steps;
      return *early;
    }
  }
  if (steps_out) *steps_out = steps;
  return *result(s);
}

struct UniformPolicy {
  Rng rng;
  Action operator()(const GameState&, const MoveList& moves) { return moves[rng.below(moves.size())]; }
};

struct NoCutoff {
  std::optional<Score> operator()(const GameState&, int, Action) const { return std::nullopt; }
};

}  // namespace miniccg
