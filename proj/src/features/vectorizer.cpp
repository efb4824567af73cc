#include "miniccg/features/vectorizer.h"

#include <algorithm>

#include "miniccg/engine/errors.h"

namespace miniccg {

namespace {

constexpr int kPlayerBlock = 6;
constexpr int kGlobalBlock = 2;

float clamp1(double x) { return static_cast<float>(std::clamp(x, -1.0, 1.0)); }

}  // namespace

FeatureLayout FeatureLayout::standard(int embedding_dim) {
  FeatureLayout l;
  l.embedding_dim = embedding_dim;
  int off = 0;
  auto add = [&](std::string name, int size) {
    l.segments.push_back({std::move(name), off, size});
    off += size;
  };
  add("global", kGlobalBlock);
  add("self", kPlayerBlock);
  add("opponent", kPlayerBlock);
  add("self_board", kMaxBoard * (7 + embedding_dim));
  add("opponent_board", kMaxBoard * (7 + embedding_dim));
  add("hand", kMaxHand * (2 + embedding_dim));
  l.total_dim = off;
  return l;
}

std::string FeatureLayout::version() const {
  return "miniccg-layout-1/emb" + std::to_string(embedding_dim) + "/dim" + std::to_string(total_dim);
}

const LayoutSegment& FeatureLayout::segment(const std::string& name) const {
  for (const auto& s : segments) {
    if (s.name == name) return s;
  }
  throw ContractViolation("FeatureLayout: no segment '" + name + "'");
}

void vectorize(const GameState& s, int perspective, const FeatureLayout& layout, const EmbeddingTable& emb,
               std::span<float> out) {
  if (emb.dim() != layout.embedding_dim) throw ContractViolation("vectorize: embedding dim does not match layout");
  if (static_cast<int>(out.size()) != layout.total_dim) throw ContractViolation("vectorize: bad output size");
  std::fill(out.begin(), out.end(), 0.0f);
  const int d = layout.embedding_dim;
  float* p = out.data();

  *p++ = clamp1(s.turn / 60.0);
  *p++ = s.active == perspective ? 1.0f : 0.0f;

  for (int side = 0; side < 2; ++side) {
    const PlayerState& ps = s.players[perspective ^ side];
    *p++ = clamp1(ps.hero_hp / 30.0);
    *p++ = clamp1(ps.mana / 10.0);
    *p++ = clamp1(ps.mana_max / 10.0);
    *p++ = clamp1(ps.hand.size() / 10.0);
    *p++ = clamp1(ps.deck_size / 30.0);
    *p++ = clamp1(ps.fatigue / 10.0);
  }

  for (int side = 0; side < 2; ++side) {
    const PlayerState& ps = s.players[perspective ^ side];
    for (int slot = 0; slot < kMaxBoard; ++slot, p += 7 + d) {
      if (slot >= static_cast<int>(ps.board.size())) continue;
      const Minion& m = ps.board[slot];
      p[0] = 1.0f;
      p[1] = clamp1(m.attack / 12.0);
      p[2] = clamp1(m.health / 12.0);
      p[3] = clamp1(m.max_health / 12.0);
      p[4] = m.can_attack ? 1.0f : 0.0f;
      p[5] = m.taunt ? 1.0f : 0.0f;
      p[6] = m.charge ? 1.0f : 0.0f;
      auto e = emb.vector(m.card);
      std::copy(e.begin(), e.end(), p + 7);
    }
  }

  const PlayerState& own = s.players[perspective];
  for (int slot = 0; slot < kMaxHand; ++slot, p += 2 + d) {
    if (slot >= static_cast<int>(own.hand.size())) continue;
    CardId c = own.hand[slot].card;
    p[0] = 1.0f;
    p[1] = clamp1(s.pool->stats(c).cost / 10.0);
    auto e = emb.vector(c);
    std::copy(e.begin(), e.end(), p + 2);
  }
}

std::vector<float> vectorize(const GameState& s, int perspective, const FeatureLayout& layout,
                             const EmbeddingTable& emb) {
  std::vector<float> out(layout.total_dim);
  vectorize(s, perspective, layout, emb, out);
  return out;
}

}  // namespace miniccg
