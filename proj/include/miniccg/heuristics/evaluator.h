#pragma once

#include <array>

#include "miniccg/engine/game_state.h"
#include "miniccg/features/vectorizer.h"
#include "miniccg/neural/value_network.h"

namespace miniccg {

// Everything needed to score a state: one network per seat, each trained on
// states where that seat is to move, vectorized from the mover's side.
struct ValueModel {
  FeatureLayout layout = FeatureLayout::standard();
  EmbeddingTable embeddings;
  std::array<Net, 2> nets;
};

// Win probabilities indexed by player, from the network of the player to
// move. Terminal states return their result.
Score evaluate_state(const ValueModel& model, const GameState& s);

}  // namespace miniccg
