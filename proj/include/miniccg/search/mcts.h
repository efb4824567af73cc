#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "miniccg/engine/game_state.h"
#include "miniccg/heuristics/bias.h"
#include "miniccg/infoset/determinize.h"
#include "miniccg/infoset/information_set.h"
#include "miniccg/search/edge.h"

namespace miniccg {

struct Node {
  int acting_player = 0;
  std::vector<Edge> edges;  // in order of first observation

  Edge* find(Action a);
  Edge& find_or_add(Action a);
};

class TranspositionTable {
 public:
  // Node pointers stay valid until clear().
  Node& find_or_create(const InformationSet& is, int acting_player);
  Node* find(const InformationSet& is);
  std::size_t size() const { return nodes_.size(); }
  void clear() { nodes_.clear(); }
  const std::unordered_map<InformationSet, Node>& nodes() const { return nodes_; }

 private:
  std::unordered_map<InformationSet, Node> nodes_;
};

// Argument of the logarithm in the exploration term.
enum class VisitCount : std::uint8_t {
  ActiveVisits,    // sum of V over the edges legal in this iteration
  ActiveObserved,  // sum of N over the same edges
};

enum class CutoffKind : std::uint8_t { None, ValueNetwork };

struct SearchConfig {
  double c = 1.4142135623730951;
  int iterations = 1000;  // used when > 0
  double seconds = 0.0;   // used when iterations == 0
  DeterminizationMode mode = DeterminizationMode::Random;
  CutoffKind cutoff = CutoffKind::None;
  bool tree_bias = false;  // progressive bias from the value model
  BiasConfig bias;
  VisitCount visit_count = VisitCount::ActiveVisits;
  bool reuse_tree = false;
  std::uint64_t seed = 1;
};

struct RootEdgeStats {
  Action move;
  std::uint32_t n = 0;
  std::uint32_t v = 0;
  double w = 0.0;
};

struct SearchStats {
  int iterations = 0;
  std::size_t table_size = 0;
  double seconds = 0.0;
  Action chosen;
  std::vector<RootEdgeStats> root;
};

// One diagnostics record as a JSON line.
std::string to_json_line(const SearchStats& stats);

// Selection walk of one iteration: the (node, edge index) pairs chosen.
struct PathStep {
  Node* node;
  std::size_t edge;
};

// Adds score[acting player] to every edge on the path.
void backpropagate(const std::vector<PathStep>& path, const Score& score);

// Simulation hook: plays `s` out (or cuts it off) and returns the score.
using Simulator = std::function<Score(GameState& s, Rng& rng)>;

class Searcher {
 public:
  explicit Searcher(SearchConfig cfg, std::shared_ptr<const ValueModel> model = nullptr);

  // Runs the configured budget from `root` and returns the root move with
  // the most visits, ties to the lowest ordinal. A zero budget returns the
  // first legal move. `root` must not be terminal.
  Action choose(const GameState& root);

  // One determinize / select / simulate / backpropagate pass. Exposed for
  // tests; `iteration` seeds the determinization and the playout.
  void run_iteration(const GameState& root, std::uint64_t iteration);

  // One selection step from `s` at `node`: updates N on every legal move,
  // picks the best active edge, applies its move to `s` and links the
  // successor node. Returns the index of the chosen edge.
  std::size_t select(Node& node, GameState& s);

  void set_simulator(Simulator sim) { simulator_ = std::move(sim); }
  TranspositionTable& table() { return table_; }
  const SearchStats& last_stats() const { return stats_; }
  const SearchConfig& config() const { return cfg_; }
  Score simulate(GameState& s, Rng& rng) const;

 private:
  double heuristic(const GameState& after, int player) const;

  SearchConfig cfg_;
  std::shared_ptr<const ValueModel> model_;
  TranspositionTable table_;
  Simulator simulator_;
  SearchStats stats_;
  std::uint64_t decisions_ = 0;
  std::uint64_t iteration_seed_ = 0;
};

}  // namespace miniccg
