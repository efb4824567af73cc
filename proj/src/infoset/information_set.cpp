#include "miniccg/infoset/information_set.h"

#include <span>

#include "miniccg/engine/hashing.h"

namespace miniccg {

namespace {

class Writer {
 public:
  explicit Writer(std::uint8_t* out) : out_(out) {}
  void put(int v) { out_[n_++] = static_cast<std::uint8_t>(v); }
  std::size_t size() const { return n_; }

 private:
  std::uint8_t* out_;
  std::size_t n_ = 0;
};

int clamp_byte(int v) { return v < 0 ? 0 : (v > 255 ? 255 : v); }

}  // namespace

InformationSet capture(const GameState& s, int perspective) {
  InformationSet is;
  Writer w(is.bytes_.data());
  const PlayerState& own = s.players[perspective];
  const PlayerState& opp = s.players[perspective ^ 1];

  w.put(perspective);
  w.put(s.active);
  w.put(s.turn);
  w.put(static_cast<int>(s.phase));
  w.put(static_cast<int>(s.outcome));
  for (const PlayerState* p : {&own, &opp}) {
    w.put(p->hero_hp + 128);
    w.put(p->mana);
    w.put(p->mana_max);
    w.put(p->fatigue);
    w.put(p->hero_power_used | p->solver_used << 1 | p->solver_enabled << 2);
    w.put(p->hand.size());
    w.put(p->deck_size);
  }
  for (const HandCard& c : own.hand) w.put(c.card);
  for (const PlayerState* p : {&own, &opp}) {
    w.put(p->board.size());
    for (const Minion& m : p->board) {
      w.put(m.card);
      w.put(clamp_byte(m.attack));
      w.put(clamp_byte(m.health));
      w.put(clamp_byte(m.max_health));
      w.put(m.can_attack | m.taunt << 1 | m.charge << 2);
    }
  }
  if (s.phase != Phase::Main) {
    const Pending& pd = s.pending;
    w.put(pd.card);
    w.put(pd.source_slot);
    w.put(pd.attacker);
    // Discover options are only seen by the player choosing.
    if (s.phase == Phase::Discover && perspective == s.active) {
      for (int i = 0; i < pd.option_count; ++i) w.put(pd.options[i]);
    }
  }
  is.size_ = static_cast<std::uint16_t>(w.size());
  Hasher h;
  h.add_bytes(std::span<const std::uint8_t>(is.bytes_.data(), is.size_));
  is.hash_ = h.digest();
  return is;
}

}  // namespace miniccg
