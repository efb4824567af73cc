#include "miniccg/heuristics/board_solver.h"

#include <algorithm>
#include <numeric>

#include "miniccg/engine/errors.h"
#include "miniccg/engine/rules.h"

namespace miniccg {

namespace {

bool ready(const Minion& m) { return m.can_attack && m.attack > 0; }

// Plays attacks on a private copy of the state and records them.
class AttackPlanner {
 public:
  explicit AttackPlanner(const GameState& s) : sim_(s) {}

  const GameState& state() const { return sim_; }
  std::vector<Action>& plan() { return plan_; }

  void attack(int attacker, std::uint8_t defender) {
    Action a1 = Action::choose_attacker(attacker);
    Action a2 = Action::choose_defender(defender);
    apply_in_place(sim_, a1);
    apply_in_place(sim_, a2);
    plan_.push_back(a1);
    plan_.push_back(a2);
  }

  bool any_legal_attack() const {
    if (sim_.terminal()) return false;
    for (const Minion& m : sim_.me().board) {
      if (ready(m)) return true;
    }
    return false;
  }

 private:
  GameState sim_;
  std::vector<Action> plan_;
};

bool legal_defender(const PlayerState& foe, std::uint8_t ref) {
  if (!foe.has_taunt()) return true;
  return !charref::is_hero(ref) && foe.board[charref::minion_index(ref)].taunt;
}

std::vector<std::uint8_t> legal_defenders(const PlayerState& foe) {
  std::vector<std::uint8_t> out;
  bool taunt = foe.has_taunt();
  if (!taunt) out.push_back(charref::kEnemyHero);
  for (std::size_t i = 0; i < foe.board.size(); ++i) {
    if (!taunt || foe.board[i].taunt) out.push_back(charref::enemy_minion(static_cast<int>(i)));
  }
  return out;
}

int enemy_threat(const GameState& s) {
  int total = 0;
  for (const Minion& m : s.foe().board) total += m.attack;
  return total;
}

struct LethalSearch {
  std::vector<int> attack;        // ready attackers, sorted by attack descending
  std::vector<int> taunt_health;  // remaining health per enemy taunt
  std::vector<int> assignment;    // per attacker: taunt index, -1 face, -2 idle
  int hero_hp = 0;
  std::vector<int> suffix;        // sum of attack[i..]

  bool solve(std::size_t i, int face) {
    int need = std::max(0, hero_hp - face);
    for (int h : taunt_health) need += std::max(0, h);
    if (need == 0) {
      for (std::size_t k = i; k < attack.size(); ++k) assignment[k] = -2;
      return true;
    }
    if (i == attack.size() || suffix[i] < need) return false;
    for (std::size_t t = 0; t < taunt_health.size(); ++t) {
      if (taunt_health[t] <= 0) continue;
      // Equal remaining health means symmetric branches.
      bool repeat = false;
      for (std::size_t u = 0; u < t; ++u) repeat |= taunt_health[u] == taunt_health[t];
      if (repeat) continue;
      assignment[i] = static_cast<int>(t);
      taunt_health[t] -= attack[i];
      bool ok = solve(i + 1, face);
      taunt_health[t] += attack[i];
      if (ok) return true;
    }
    if (face < hero_hp) {
      assignment[i] = -1;
      if (solve(i + 1, face + attack[i])) return true;
    }
    assignment[i] = -2;
    return solve(i + 1, face);
  }
};

}  // namespace

double board_potential(const GameState& s, int player) {
  const PlayerState& p = s.players[player];
  double total = 0.5 * p.hero_hp;
  for (const Minion& m : p.board) total += m.attack + m.health;
  return total;
}

std::vector<AttackPair> score_attacks(const GameState& s) {
  std::vector<AttackPair> out;
  if (s.terminal() || s.phase != Phase::Main) return out;
  int me = s.active, foe = s.active ^ 1;
  double own_before = board_potential(s, me);
  double foe_before = board_potential(s, foe);
  std::vector<std::uint8_t> defenders = legal_defenders(s.foe());
  for (std::size_t i = 0; i < s.me().board.size(); ++i) {
    if (!ready(s.me().board[i])) continue;
    for (std::uint8_t d : defenders) {
      GameState sim = s;
      apply_in_place(sim, Action::choose_attacker(static_cast<int>(i)));
      apply_in_place(sim, Action::choose_defender(d));
      double gain = foe_before - board_potential(sim, foe);
      double loss = own_before - board_potential(sim, me);
      out.push_back({static_cast<std::uint8_t>(i), d, gain - loss});
    }
  }
  return out;
}

std::optional<std::vector<Action>> find_lethal(const GameState& s) {
  if (s.terminal() || s.phase != Phase::Main) return std::nullopt;
  const PlayerState& me = s.me();
  const PlayerState& foe = s.foe();

  std::vector<int> order;  // own board indices of ready attackers
  for (std::size_t i = 0; i < me.board.size(); ++i) {
    if (ready(me.board[i])) order.push_back(static_cast<int>(i));
  }
  if (order.empty()) return std::nullopt;
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return me.board[a].attack > me.board[b].attack; });

  std::vector<int> taunts;  // enemy board indices
  for (std::size_t i = 0; i < foe.board.size(); ++i) {
    if (foe.board[i].taunt) taunts.push_back(static_cast<int>(i));
  }

  LethalSearch search;
  search.hero_hp = foe.hero_hp;
  for (int idx : order) search.attack.push_back(me.board[idx].attack);
  for (int idx : taunts) search.taunt_health.push_back(foe.board[idx].health);
  search.assignment.assign(order.size(), -2);
  search.suffix.assign(order.size() + 1, 0);
  for (std::size_t i = order.size(); i-- > 0;) search.suffix[i] = search.suffix[i + 1] + search.attack[i];

  int taunt_total = 0;
  for (int h : search.taunt_health) taunt_total += h;
  if (search.suffix[0] < search.hero_hp + taunt_total) return std::nullopt;
  if (!search.solve(0, 0)) return std::nullopt;

  // Replay: taunt attacks first, then everything else to the face. Board
  // positions shift as minions die, so track original indices.
  AttackPlanner planner(s);
  std::vector<int> own_ids(me.board.size());
  std::iota(own_ids.begin(), own_ids.end(), 0);
  std::vector<int> foe_ids(foe.board.size());
  std::iota(foe_ids.begin(), foe_ids.end(), 0);

  auto run = [&](int own_orig, int foe_orig) {
    int a = static_cast<int>(std::find(own_ids.begin(), own_ids.end(), own_orig) - own_ids.begin());
    std::uint8_t d = charref::kEnemyHero;
    int dpos = -1;
    if (foe_orig >= 0) {
      dpos = static_cast<int>(std::find(foe_ids.begin(), foe_ids.end(), foe_orig) - foe_ids.begin());
      d = charref::enemy_minion(dpos);
    }
    std::size_t own_before = planner.state().me().board.size();
    std::size_t foe_before = planner.state().foe().board.size();
    planner.attack(a, d);
    if (planner.state().terminal()) return;
    if (planner.state().me().board.size() < own_before) own_ids.erase(own_ids.begin() + a);
    if (dpos >= 0 && planner.state().foe().board.size() < foe_before) foe_ids.erase(foe_ids.begin() + dpos);
  };

  std::vector<int> face;
  for (std::size_t k = 0; k < order.size(); ++k) {
    if (planner.state().terminal()) break;
    int t = search.assignment[k];
    if (t >= 0) {
      int foe_orig = taunts[t];
      if (std::find(foe_ids.begin(), foe_ids.end(), foe_orig) == foe_ids.end()) {
        face.push_back(order[k]);  // already dead: overkill goes face instead
        continue;
      }
      run(order[k], foe_orig);
    } else if (t == -1) {
      face.push_back(order[k]);
    }
  }
  for (int own_orig : face) {
    if (planner.state().terminal()) break;
    run(own_orig, -1);
  }
  // Deathrattles can end the game either way; only a win counts.
  auto r = result(planner.state());
  if (!r || (*r)[s.active] != 1.0) return std::nullopt;
  return std::move(planner.plan());
}

std::vector<Action> solve_board(const GameState& s) {
  if (s.terminal() || s.phase != Phase::Main) return {};
  if (auto lethal = find_lethal(s)) return *lethal;

  AttackPlanner planner(s);
  int own_hp = s.me().hero_hp;

  // Threat: the enemy board could kill us next turn if left alone.
  while (planner.any_legal_attack() && enemy_threat(planner.state()) >= own_hp) {
    const GameState& cur = planner.state();
    const PlayerState& foe = cur.foe();
    const PlayerState& me = cur.me();
    int target = -1;
    for (std::size_t i = 0; i < foe.board.size(); ++i) {
      if (!legal_defender(foe, charref::enemy_minion(static_cast<int>(i)))) continue;
      if (target < 0 || foe.board[i].attack > foe.board[target].attack) target = static_cast<int>(i);
    }
    if (target < 0) break;
    int health = foe.board[target].health;
    int best_killer = -1, biggest = -1;
    for (std::size_t i = 0; i < me.board.size(); ++i) {
      const Minion& m = me.board[i];
      if (!ready(m)) continue;
      if (m.attack >= health && (best_killer < 0 || m.attack < me.board[best_killer].attack)) {
        best_killer = static_cast<int>(i);
      }
      if (biggest < 0 || m.attack > me.board[biggest].attack) biggest = static_cast<int>(i);
    }
    planner.attack(best_killer >= 0 ? best_killer : biggest, charref::enemy_minion(target));
  }

  // Greedy passes over the scored pairs until nothing can attack.
  while (planner.any_legal_attack()) {
    std::vector<AttackPair> pairs = score_attacks(planner.state());
    if (pairs.empty()) break;
    std::stable_sort(pairs.begin(), pairs.end(),
                     [](const AttackPair& a, const AttackPair& b) { return a.score > b.score; });
    // Pairs are re-identified by minion identity as the boards change.
    const GameState& start = planner.state();
    std::vector<int> own_ids(start.me().board.size()), foe_ids(start.foe().board.size());
    std::iota(own_ids.begin(), own_ids.end(), 0);
    std::iota(foe_ids.begin(), foe_ids.end(), 0);
    for (const AttackPair& p : pairs) {
      const GameState& cur = planner.state();
      if (cur.terminal()) break;
      auto a_it = std::find(own_ids.begin(), own_ids.end(), p.attacker);
      if (a_it == own_ids.end()) continue;
      int a = static_cast<int>(a_it - own_ids.begin());
      if (!ready(cur.me().board[a])) continue;
      std::uint8_t d = charref::kEnemyHero;
      int dpos = -1;
      if (!charref::is_hero(p.defender)) {
        auto d_it = std::find(foe_ids.begin(), foe_ids.end(), charref::minion_index(p.defender));
        if (d_it == foe_ids.end()) continue;
        dpos = static_cast<int>(d_it - foe_ids.begin());
        d = charref::enemy_minion(dpos);
      }
      if (!legal_defender(cur.foe(), d)) continue;
      std::size_t own_before = cur.me().board.size();
      std::size_t foe_before = cur.foe().board.size();
      planner.attack(a, d);
      if (planner.state().terminal()) break;
      if (planner.state().me().board.size() < own_before) own_ids.erase(own_ids.begin() + a);
      if (dpos >= 0 && planner.state().foe().board.size() < foe_before) foe_ids.erase(foe_ids.begin() + dpos);
    }
  }
  return std::move(planner.plan());
}

GameState use_solver_action(const GameState& s) {
  if (!is_legal(s, Action::use_solver())) throw ContractViolation("UseSolver is not legal here");
  return apply(s, Action::use_solver());
}

}  // namespace miniccg
