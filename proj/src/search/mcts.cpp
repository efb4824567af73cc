#include "miniccg/search/mcts.h"

#include <chrono>

#include "json.hpp"

#include "miniccg/engine/errors.h"
#include "miniccg/engine/rules.h"

namespace miniccg {

Edge* Node::find(Action a) {
  for (Edge& e : edges) {
    if (e.move == a) return &e;
  }
  return nullptr;
}

Edge& Node::find_or_add(Action a) {
  if (Edge* e = find(a)) return *e;
  edges.push_back(Edge{.move = a});
  return edges.back();
}

Node& TranspositionTable::find_or_create(const InformationSet& is, int acting_player) {
  auto [it, inserted] = nodes_.try_emplace(is);
  if (inserted) it->second.acting_player = acting_player;
  return it->second;
}

Node* TranspositionTable::find(const InformationSet& is) {
  auto it = nodes_.find(is);
  return it == nodes_.end() ? nullptr : &it->second;
}

std::string to_json_line(const SearchStats& stats) {
  nlohmann::ordered_json j;
  j["iterations"] = stats.iterations;
  j["table_size"] = stats.table_size;
  j["seconds"] = stats.seconds;
  j["chosen"] = to_string(stats.chosen);
  auto& edges = j["root"] = nlohmann::ordered_json::array();
  for (const auto& e : stats.root) {
    edges.push_back({{"move", to_string(e.move)}, {"n", e.n}, {"v", e.v}, {"w", e.w}});
  }
  return j.dump();
}

void backpropagate(const std::vector<PathStep>& path, const Score& score) {
  for (const PathStep& step : path) step.node->edges[step.edge].w += score[step.node->acting_player];
}

Searcher::Searcher(SearchConfig cfg, std::shared_ptr<const ValueModel> model)
    : cfg_(cfg), model_(std::move(model)) {
  if ((cfg_.cutoff != CutoffKind::None || cfg_.tree_bias || cfg_.bias.policy != PolicyKind::Uniform) && !model_) {
    throw ConfigError("search: heuristics enabled but no value model given");
  }
}

double Searcher::heuristic(const GameState& after, int player) const { return evaluate_state(*model_, after)[player]; }

Score Searcher::simulate(GameState& s, Rng& rng) const {
  auto policy = [&](const GameState& st, const MoveList& moves) -> Action {
    if (cfg_.bias.policy == PolicyKind::Uniform) return moves[rng.below(moves.size())];
    StateEvaluator eval = [this](const GameState& x, int p) { return heuristic(x, p); };
    return biased_policy_choose(st, moves, cfg_.bias, eval, rng);
  };
  if (cfg_.cutoff == CutoffKind::ValueNetwork) {
    auto cutoff = [&](const GameState& st, int steps, Action last) {
      return early_cutoff_evaluate(st, steps, last, cfg_.bias, *model_);
    };
    return run_playout(s, policy, cutoff);
  }
  return run_playout(s, policy, NoCutoff{});
}

std::size_t Searcher::select(Node& node, GameState& s) {
  MoveList moves;
  legal_moves(s, moves);
  if (moves.empty()) throw ContractViolation("select: terminal state");

  std::array<std::size_t, MoveList::capacity()> idx{};
  for (std::size_t i = 0; i < moves.size(); ++i) {
    Edge& e = node.find_or_add(moves[i]);
    ++e.n;
    idx[i] = static_cast<std::size_t>(&e - node.edges.data());
  }

  double visits = 0.0;
  for (std::size_t i = 0; i < moves.size(); ++i) {
    const Edge& e = node.edges[idx[i]];
    visits += cfg_.visit_count == VisitCount::ActiveVisits ? e.v : e.n;
  }
  visits = std::max(visits, 1.0);

  const bool biased = cfg_.tree_bias && model_;
  std::size_t best = idx[0];
  double best_score = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < moves.size(); ++i) {
    const Edge& e = node.edges[idx[i]];
    double sc = biased && e.has_h ? progressive_bias_score(e, visits, e.h, cfg_.bias, cfg_.c)
                                  : uct_score(e, visits, cfg_.c);
    if (sc > best_score) {
      best_score = sc;
      best = idx[i];
    }
  }

  Edge& chosen = node.edges[best];
  ++chosen.v;
  apply_in_place(s, chosen.move);
  if (biased && !chosen.has_h) {
    chosen.h = static_cast<float>(heuristic(s, node.acting_player));
    chosen.has_h = true;
  }
  chosen.next = &table_.find_or_create(capture(s, s.active), s.active);
  return best;
}

void Searcher::run_iteration(const GameState& root, std::uint64_t iteration) {
  const std::uint64_t seed = derive_seed(iteration_seed_, iteration);
  GameState s = determinize(root, root.active, cfg_.mode, seed);
  // Neither mode may see future randomness.
  s.rng = Rng(derive_seed(seed, 0x5EED));

  Node* node = &table_.find_or_create(capture(s, s.active), s.active);
  std::vector<PathStep> path;
  while (!s.terminal()) {
    std::size_t e = select(*node, s);
    path.push_back({node, e});
    const Edge& edge = node->edges[e];
    node = edge.next;
    if (edge.v == 1) break;
  }

  Score score;
  if (auto r = result(s)) {
    score = *r;
  } else {
    Rng rng(derive_seed(seed, 0x51A));
    score = simulator_ ? simulator_(s, rng) : simulate(s, rng);
  }
  backpropagate(path, score);
}

Action Searcher::choose(const GameState& root) {
  MoveList moves = legal_moves(root);
  if (moves.empty()) throw ContractViolation("search: root is terminal");
  if (!cfg_.reuse_tree) table_.clear();
  iteration_seed_ = derive_seed(cfg_.seed, decisions_++);

  stats_ = SearchStats{};
  auto start = std::chrono::steady_clock::now();
  auto elapsed = [&] { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count(); };

  if (moves.size() > 1) {
    if (cfg_.iterations > 0) {
      for (int i = 0; i < cfg_.iterations; ++i) run_iteration(root, static_cast<std::uint64_t>(i));
      stats_.iterations = cfg_.iterations;
    } else if (cfg_.seconds > 0.0) {
      int i = 0;
      while (elapsed() < cfg_.seconds) run_iteration(root, static_cast<std::uint64_t>(i++));
      stats_.iterations = i;
    }
  }

  Action best = moves[0];
  Node* node = table_.find(capture(root, root.active));
  if (node) {
    std::uint32_t best_v = 0;
    for (Action m : moves) {
      const Edge* e = node->find(m);
      if (!e) continue;
      stats_.root.push_back({m, e->n, e->v, e->w});
      if (e->v > best_v) {
        best_v = e->v;
        best = m;
      }
    }
  }
  stats_.chosen = best;
  stats_.table_size = table_.size();
  stats_.seconds = elapsed();
  return best;
}

}  // namespace miniccg
