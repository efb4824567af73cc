#pragma once

#include <functional>
#include <optional>
#include <string_view>

#include "miniccg/engine/game_state.h"
#include "miniccg/engine/rng.h"
#include "miniccg/heuristics/evaluator.h"
#include "miniccg/search/edge.h"

namespace miniccg {

enum class PolicyKind : std::uint8_t { Uniform, EpsilonGreedy, Boltzmann };

PolicyKind parse_policy(std::string_view name);
std::string_view to_string(PolicyKind kind);

struct BiasConfig {
  double tree_weight = 1.0;   // W
  double epsilon = 0.7;       // greedy probability
  double temperature = 0.25;  // Boltzmann T
  int cutoff_min_steps = 20;  // k
  PolicyKind policy = PolicyKind::Uniform;
};

// uct_score + W * h / (V + 1).
double progressive_bias_score(const Edge& e, double node_visits, double h, const BiasConfig& cfg, double c);

// Value of `s` for `player`, in [0, 1].
using StateEvaluator = std::function<double(const GameState& s, int player)>;

// Simulation move choice. EpsilonGreedy: with probability epsilon the move
// whose successor evaluates best for the mover (ties to the lowest ordinal),
// otherwise uniform. Boltzmann: P(m) proportional to exp(eval(m) / T).
// Uniform, or no evaluator: uniform.
Action biased_policy_choose(const GameState& s, const MoveList& moves, const BiasConfig& cfg,
                            const StateEvaluator& evaluator, Rng& rng);

// Ends a simulation with the model's prediction once at least k steps were
// played and the last move was EndTurn.
std::optional<Score> early_cutoff_evaluate(const GameState& s, int steps, Action last, const BiasConfig& cfg,
                                           const ValueModel& model);

}  // namespace miniccg
