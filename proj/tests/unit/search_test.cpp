#include <cmath>
#include <functional>
#include <map>

#include <gtest/gtest.h>

#include "json.hpp"
#include "miniccg/engine/errors.h"
#include "miniccg/search/mcts.h"
#include "support.h"

namespace miniccg {
namespace {

using namespace testing;

SearchConfig config(int iterations, std::uint64_t seed = 1) {
  SearchConfig cfg;
  cfg.iterations = iterations;
  cfg.seed = seed;
  return cfg;
}

// Exhaustive game value for the side to move's opponent-agnostic score of
// `player`. Only valid on positions without random events.
double minimax(const GameState& s, int player) {
  if (auto r = result(s)) return (*r)[player];
  double best = s.active == player ? -1.0 : 2.0;
  for (Action a : legal_moves(s)) {
    double v = minimax(apply(s, a), player);
    best = s.active == player ? std::max(best, v) : std::min(best, v);
  }
  return best;
}

TEST(Uct, MatchesExtendedPrecisionOracle) {
  Edge e;
  e.v = 5;
  e.w = 2.5;
  long double oracle = 0.5L + std::sqrt(2.0L) * std::sqrt(std::log(10.0L) / 5.0L);
  EXPECT_NEAR(uct_score(e, 10.0, std::sqrt(2.0)), static_cast<double>(oracle), 1e-12);
  EXPECT_NEAR(uct_score(e, 10.0, std::sqrt(2.0)), 1.4597051824, 1e-9);
}

TEST(Uct, UnvisitedIsInfinite) {
  Edge e;
  e.n = 3;
  EXPECT_TRUE(std::isinf(uct_score(e, 1.0, 1.0)));
}

TEST(Uct, ZeroExplorationPicksBestMean) {
  GameState s = blank();
  s.players[0].hand.push_back({card::kVanilla12, false});
  SearchConfig cfg = config(1);
  cfg.c = 0.0;
  Searcher search(cfg);
  Node node;
  Edge& end = node.find_or_add(Action::end_turn());
  end.v = 10;
  end.w = 3.0;
  Edge& play = node.find_or_add(Action::play_card(0));
  play.v = 10;
  play.w = 7.0;
  Edge& power = node.find_or_add(Action::hero_power());
  power.v = 10;
  power.w = 5.0;
  std::size_t chosen = search.select(node, s);
  EXPECT_EQ(node.edges[chosen].move, Action::play_card(0));
  EXPECT_EQ(node.edges[chosen].v, 11u);
}

TEST(Select, NewMoveIsCreatedWithOneObservationAndEndsWalk) {
  GameState s = blank();
  s.players[0].hand.push_back({card::kVanilla12, false});
  Searcher search(config(1));
  Node node;
  for (Action a : legal_moves(s)) {
    Edge& e = node.find_or_add(a);
    if (a == Action::play_card(0)) continue;
    e.n = e.v = 4;
    e.w = 4.0;
  }
  node.edges.erase(node.edges.begin() + 2);  // forget PlayCard(0)
  ASSERT_EQ(node.find(Action::play_card(0)), nullptr);
  std::size_t chosen = search.select(node, s);
  const Edge& e = node.edges[chosen];
  EXPECT_EQ(e.move, Action::play_card(0));
  EXPECT_EQ(e.n, 1u);
  EXPECT_EQ(e.v, 1u);
  EXPECT_EQ(s.phase, Phase::PlaceMinion);
  ASSERT_NE(e.next, nullptr);
  EXPECT_EQ(search.table().find(capture(s, s.active)), e.next);
}

TEST(Select, EdgeIllegalInThisDeterminizationKeepsStats) {
  GameState rich = blank();
  rich.players[0].hand.push_back({card::kVanilla12, false});
  rich.players[0].hand.push_back({card::kWolfRider, false});
  GameState poor = rich;
  poor.players[0].mana = 1;  // Wolf Rider (3) is no longer affordable

  SearchConfig cfg = config(1);
  cfg.c = 0.0;
  Searcher search(cfg);
  Node node;
  for (Action a : legal_moves(rich)) {
    Edge& e = node.find_or_add(a);
    e.n = e.v = 10;
    e.w = a == Action::play_card(1) ? 9.0 : 1.0;
  }
  const Edge before = *node.find(Action::play_card(1));

  GameState s = poor;
  std::size_t chosen = search.select(node, s);
  EXPECT_NE(node.edges[chosen].move, Action::play_card(1));
  const Edge* kept = node.find(Action::play_card(1));
  ASSERT_NE(kept, nullptr);
  EXPECT_EQ(kept->n, before.n);
  EXPECT_EQ(kept->v, before.v);
  EXPECT_EQ(kept->w, before.w);

  // Back in a determinization where it is legal, its record wins again.
  s = rich;
  chosen = search.select(node, s);
  EXPECT_EQ(node.edges[chosen].move, Action::play_card(1));
  EXPECT_EQ(node.edges[chosen].n, before.n + 1);
}

TEST(Backpropagate, PerspectiveBookkeeping) {
  Node a, b, c;
  a.acting_player = 0;
  b.acting_player = 1;
  c.acting_player = 0;
  for (Node* n : {&a, &b, &c}) n->find_or_add(Action::end_turn());
  std::vector<PathStep> path{{&a, 0}, {&b, 0}, {&c, 0}};

  backpropagate(path, Score{1.0, 0.0});
  EXPECT_EQ(a.edges[0].w, 1.0);
  EXPECT_EQ(b.edges[0].w, 0.0);
  EXPECT_EQ(c.edges[0].w, 1.0);

  backpropagate(path, Score{0.5, 0.5});
  EXPECT_EQ(a.edges[0].w, 1.5);
  EXPECT_EQ(b.edges[0].w, 0.5);
  EXPECT_EQ(c.edges[0].w, 1.5);

  b.acting_player = 0;
  backpropagate(path, Score{1.0, 0.0});
  EXPECT_EQ(b.edges[0].w, 1.5);
}

TEST(Choose, SingleLegalMoveNeedsNoSearch) {
  GameState s = blank();
  s.players[0].hand.push_back({card::kVanilla12, false});
  apply_in_place(s, Action::play_card(0));
  ASSERT_EQ(legal_moves(s).size(), 1u);
  Searcher search(config(1000));
  EXPECT_EQ(search.choose(s), Action::place(0));
  EXPECT_EQ(search.last_stats().iterations, 0);
}

TEST(Choose, ZeroBudgetReturnsFirstLegalMove) {
  GameState s = fresh(3);
  SearchConfig cfg = config(0);
  cfg.seconds = 0.0;
  Searcher search(cfg);
  EXPECT_EQ(search.choose(s), legal_moves(s)[0]);
}

TEST(Choose, VisitTiesGoToLowestOrdinal) {
  GameState s = fresh(3);
  ASSERT_GT(legal_moves(s).size(), 2u);
  Searcher search(config(2));
  EXPECT_EQ(search.choose(s), Action::end_turn());
  const auto& root = search.last_stats().root;
  ASSERT_GE(root.size(), 2u);
  EXPECT_EQ(root[0].v, 1u);
  EXPECT_EQ(root[1].v, 1u);
}

TEST(Choose, TimeBudget) {
  SearchConfig cfg = config(0);
  cfg.seconds = 0.05;
  Searcher search(cfg);
  search.choose(fresh(3));
  EXPECT_GT(search.last_stats().iterations, 0);
  EXPECT_GE(search.last_stats().seconds, 0.05);
}

TEST(Choose, Deterministic) {
  GameState s = random_walk(fresh(9), 20, 2);
  Searcher a(config(300, 77)), b(config(300, 77));
  EXPECT_EQ(a.choose(s), b.choose(s));
  EXPECT_EQ(to_json_line(a.last_stats()).substr(0, 40), to_json_line(b.last_stats()).substr(0, 40));
  ASSERT_EQ(a.last_stats().root.size(), b.last_stats().root.size());
  for (std::size_t i = 0; i < a.last_stats().root.size(); ++i) {
    EXPECT_EQ(a.last_stats().root[i].v, b.last_stats().root[i].v);
    EXPECT_EQ(a.last_stats().root[i].w, b.last_stats().root[i].w);
  }
}

TEST(Choose, StatsJsonLine) {
  Searcher search(config(50));
  search.choose(fresh(1));
  auto j = nlohmann::json::parse(to_json_line(search.last_stats()));
  EXPECT_EQ(j["iterations"], 50);
  EXPECT_TRUE(parse_action(j["chosen"].get<std::string>()).has_value());
  std::uint32_t total = 0;
  for (const auto& e : j["root"]) total += e["v"].get<std::uint32_t>();
  EXPECT_EQ(total, 50u);
}

TEST(Choose, FindsLethalWithChargeMinion) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    GameState s = blank(seed);
    s.players[0].mana = 1;
    s.players[0].hand.push_back({card::kVanilla12, false});
    s.players[0].hand.push_back({card::kCharge11, false});
    s.players[1].hero_hp = 1;
    s.players[0].hero_hp = 2;
    s.players[1].board.push_back(minion(card::kVanilla12, 2, 2, false));
    Searcher search(config(1000, seed));
    while (!s.terminal() && s.active == 0) apply_in_place(s, search.choose(s));
    EXPECT_EQ(result(s), (Score{1.0, 0.0})) << "seed " << seed;
  }
}

TEST(Search, RequiresModelForHeuristics) {
  SearchConfig cfg = config(10);
  cfg.cutoff = CutoffKind::ValueNetwork;
  EXPECT_THROW(Searcher{cfg}, ConfigError);
  cfg = config(10);
  cfg.tree_bias = true;
  EXPECT_THROW(Searcher{cfg}, ConfigError);
}

TEST(Search, TranspositionsShareOneNode) {
  GameState s = blank();
  s.players[0].hand.push_back({card::kVanilla12, false});
  s.players[0].hand.push_back({card::kTaunt, false});
  GameState x = s, y = s;
  for (Action a : {Action::play_card(0), Action::place(0), Action::play_card(0), Action::place(1)}) apply_in_place(x, a);
  for (Action a : {Action::play_card(1), Action::place(0), Action::play_card(0), Action::place(0)}) apply_in_place(y, a);
  ASSERT_EQ(x.players[0].board, y.players[0].board);
  EXPECT_EQ(capture(x, 0), capture(y, 0));

  TranspositionTable table;
  Node& nx = table.find_or_create(capture(x, 0), 0);
  nx.find_or_add(Action::end_turn()).v = 3;
  Node& ny = table.find_or_create(capture(y, 0), 0);
  EXPECT_EQ(&nx, &ny);
  EXPECT_EQ(ny.edges[0].v, 3u);
  EXPECT_EQ(table.size(), 1u);

  // A search from s reaches the merged position along both orders.
  Searcher search(config(3000));
  search.choose(s);
  Node* merged = search.table().find(capture(x, 0));
  ASSERT_NE(merged, nullptr);
  EXPECT_GT(merged->edges.size(), 0u);
}

std::map<const Node*, std::uint64_t> visit_sums(const TranspositionTable& table) {
  std::map<const Node*, std::uint64_t> out;
  for (const auto& [is, n] : table.nodes()) {
    std::uint64_t sum = 0;
    for (const Edge& e : n.edges) sum += e.v;
    out[&n] = sum;
  }
  return out;
}

TEST(Search, VisitConservationAndQRange) {
  GameState root = random_walk(fresh(12), 30, 4);
  Searcher search(config(1));
  search.choose(root);  // sets up the iteration seed
  search.table().clear();
  std::map<const Node*, std::uint64_t> before;
  const int iterations = 400;
  for (int i = 0; i < iterations; ++i) {
    search.run_iteration(root, static_cast<std::uint64_t>(i));
    // One walk passes through a node at most once, and always through the root.
    auto after = visit_sums(search.table());
    for (const auto& [n, sum] : after) ASSERT_LE(sum - before[n], 1u);
    before = std::move(after);
  }
  const Node* r = search.table().find(capture(root, root.active));
  ASSERT_NE(r, nullptr);
  EXPECT_EQ(before[r], static_cast<std::uint64_t>(iterations));
  for (const auto& [is, n] : search.table().nodes()) {
    for (const Edge& e : n.edges) {
      EXPECT_LE(e.v, e.n);
      EXPECT_GE(e.q(), 0.0);
      EXPECT_LE(e.q(), 1.0);
    }
  }
}

// Player 0 at 2 HP faces a 2/2 that will attack next turn; a Firebolt on the
// minion forces the turn-limit draw, anything else loses.
GameState two_ply_position() {
  GameState s = blank();
  s.turn = 59;
  s.players[0].hero_hp = 2;
  s.players[0].mana = 1;
  s.players[0].hero_power_used = true;
  s.players[0].hand.push_back({card::kFirebolt, false});
  PlayerState& foe = s.players[1];
  foe.hero_hp = 10;
  foe.board.push_back(minion(card::kStoneTusk, 2, 2, false));
  foe.deck_size = 3;
  for (int i = 0; i < 3; ++i) foe.deck[i] = card::kHillOgre;
  return s;
}

TEST(Search, TwoPlyToyPositionConverges) {
  GameState s = two_ply_position();
  // Oracle: exhaustive search over the (deterministic) remaining game.
  std::vector<std::pair<Action, double>> values;
  for (Action a : legal_moves(s)) values.emplace_back(a, minimax(apply(s, a), 0));
  ASSERT_EQ(values.size(), 2u);
  EXPECT_EQ(values[0].second, 0.0);  // EndTurn
  EXPECT_EQ(values[1].second, 0.5);  // PlayCard(0)

  int correct = 0;
  for (std::uint64_t run = 0; run < 100; ++run) {
    SearchConfig cfg = config(10000, 1000 + run);
    cfg.mode = DeterminizationMode::Cheater;
    Searcher search(cfg);
    correct += search.choose(s) == Action::play_card(0);
  }
  EXPECT_GE(correct, 99);
}

// Flame Juggler deals 1-3 to the enemy hero at 3 HP: only a 3 wins, and
// otherwise the following forced moves end in a fatigue loss.
TEST(Search, RandomOutcomesAverageIntoQ) {
  GameState s = blank();
  PlayerState& me = s.players[0];
  me.hero_hp = 1;
  me.deck_size = 0;
  me.mana = 2;
  me.hero_power_used = true;
  me.hand.push_back({card::kJuggler, false});
  PlayerState& foe = s.players[1];
  foe.hero_hp = 3;
  foe.deck_size = 3;
  for (int i = 0; i < 3; ++i) foe.deck[i] = card::kHillOgre;
  apply_in_place(s, Action::play_card(0));
  ASSERT_EQ(legal_moves(s).size(), 1u);

  Searcher search(config(1));
  search.table().clear();
  for (int i = 0; i < 10000; ++i) search.run_iteration(s, static_cast<std::uint64_t>(i));
  const Node* root = search.table().find(capture(s, 0));
  ASSERT_NE(root, nullptr);
  ASSERT_EQ(root->edges.size(), 1u);
  EXPECT_EQ(root->edges[0].v, 10000u);
  EXPECT_NEAR(root->edges[0].q(), 1.0 / 3.0, 0.03);
}

}  // namespace
}  // namespace miniccg
