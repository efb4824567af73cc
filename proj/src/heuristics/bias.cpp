#include "miniccg/heuristics/bias.h"

#include <cmath>
#include <vector>

#include "miniccg/engine/errors.h"
#include "miniccg/engine/rules.h"

namespace miniccg {

PolicyKind parse_policy(std::string_view name) {
  if (name == "uniform") return PolicyKind::Uniform;
  if (name == "epsilon_greedy") return PolicyKind::EpsilonGreedy;
  if (name == "boltzmann") return PolicyKind::Boltzmann;
  throw ConfigError("unknown simulation policy '" + std::string(name) + "'");
}

std::string_view to_string(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::Uniform: return "uniform";
    case PolicyKind::EpsilonGreedy: return "epsilon_greedy";
    case PolicyKind::Boltzmann: return "boltzmann";
  }
  return "?";
}

Score evaluate_state(const ValueModel& model, const GameState& s) {
  if (auto r = result(s)) return *r;
  std::array<float, Net::kMaxWidth> x{};
  std::span<float> in(x.data(), static_cast<std::size_t>(model.layout.total_dim));
  vectorize(s, s.active, model.layout, model.embeddings, in);
  std::array<float, 2> p = predict(model.nets[s.active], in);
  Score out{};
  out[s.active] = p[0];
  out[s.active ^ 1] = p[1];
  return out;
}

double progressive_bias_score(const Edge& e, double node_visits, double h, const BiasConfig& cfg, double c) {
  return uct_score(e, node_visits, c) + cfg.tree_weight * h / (e.v + 1.0);
}

Action biased_policy_choose(const GameState& s, const MoveList& moves, const BiasConfig& cfg,
                            const StateEvaluator& evaluator, Rng& rng) {
  if (moves.size() == 1) return moves[0];
  if (cfg.policy == PolicyKind::Uniform || !evaluator) return moves[rng.below(moves.size())];

  const int mover = s.active;
  auto eval_all = [&] {
    std::vector<double> v(moves.size());
    for (std::size_t i = 0; i < moves.size(); ++i) v[i] = evaluator(apply(s, moves[i]), mover);
    return v;
  };

  if (cfg.policy == PolicyKind::EpsilonGreedy) {
    if (rng.uniform() >= cfg.epsilon) return moves[rng.below(moves.size())];
    std::vector<double> v = eval_all();
    std::size_t best = 0;
    for (std::size_t i = 1; i < v.size(); ++i) {
      if (v[i] > v[best]) best = i;
    }
    return moves[best];
  }

  std::vector<double> v = eval_all();
  double mx = v[0];
  for (double x : v) mx = std::max(mx, x);
  double total = 0.0;
  for (double& x : v) {
    x = std::exp((x - mx) / cfg.temperature);
    total += x;
  }
  double u = rng.uniform() * total;
  for (std::size_t i = 0; i < v.size(); ++i) {
    u -= v[i];
    if (u < 0) return moves[i];
  }
  return moves.back();
}

std::optional<Score> early_cutoff_evaluate(const GameState& s, int steps, Action last, const BiasConfig& cfg,
                                           const ValueModel& model) {
  if (steps < cfg.cutoff_min_steps || last.kind != ActionKind::EndTurn) return std::nullopt;
  return evaluate_state(model, s);
}

}  // namespace miniccg
