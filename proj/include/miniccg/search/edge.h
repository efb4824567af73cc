#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

#include "miniccg/engine/action.h"

namespace miniccg {

struct Node;

struct Edge {
  Action move;
  std::uint32_t n = 0;  // times the move was legal when this node was expanded
  std::uint32_t v = 0;  // times the move was chosen
  double w = 0.0;       // summed score of the acting player
  float h = 0.0f;       // heuristic value of the successor, set on first visit
  bool has_h = false;
  Node* next = nullptr;  // successor seen by the latest iteration

  double q() const { return v == 0 ? 0.0 : w / v; }
};

// Q + C * sqrt(ln(node_visits) / V); +inf for an unvisited edge.
inline double uct_score(const Edge& e, double node_visits, double c) {
  if (e.v == 0) return std::numeric_limits<double>::infinity();
  return e.q() + c * std::sqrt(std::log(node_visits) / e.v);
}

}  // namespace miniccg
