#pragma once

#include <span>
#include <string>
#include <vector>

#include "miniccg/engine/game_state.h"
#include "miniccg/features/embeddings.h"

namespace miniccg {

struct LayoutSegment {
  std::string name;
  int offset = 0;
  int size = 0;
};

// Fixed feature schema, perspective player first:
//   global        turn/60, perspective-is-active
//   player x2     hp/30, mana/10, mana_max/10, hand/10, deck/30, fatigue/10
//   board x14     present, atk/12, hp/12, max_hp/12, can_attack, taunt,
//                 charge, embedding   (own 7 slots, then enemy 7)
//   hand x10      present, cost/10, embedding   (own hand only)
// Every value is clamped to [-1, 1].
struct FeatureLayout {
  int embedding_dim = 10;
  std::vector<LayoutSegment> segments;
  int total_dim = 0;

  static FeatureLayout standard(int embedding_dim = 10);
  std::string version() const;
  const LayoutSegment& segment(const std::string& name) const;
};

void vectorize(const GameState& s, int perspective, const FeatureLayout& layout, const EmbeddingTable& emb,
               std::span<float> out);
std::vector<float> vectorize(const GameState& s, int perspective, const FeatureLayout& layout,
                             const EmbeddingTable& emb);

}  // namespace miniccg
