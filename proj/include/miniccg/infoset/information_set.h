#pragma once

#include <array>
#include <cstdint>
#include <cstring>
#include <functional>

#include "miniccg/engine/game_state.h"

namespace miniccg {

// Everything one player can observe, as a canonical byte string: own hand
// (in order), both boards (in order), visible hero and mana stats, hand and
// deck counts, turn, active player and the decomposition phase. Opponent
// hand identities and all deck orders are left out.
class InformationSet {
 public:
  static constexpr std::size_t kCapacity = 128;

  InformationSet() = default;

  int perspective() const { return bytes_[0]; }
  std::uint64_t hash() const { return hash_; }
  std::size_t size() const { return size_; }
  const std::uint8_t* data() const { return bytes_.data(); }

  friend bool operator==(const InformationSet& a, const InformationSet& b) {
    return a.hash_ == b.hash_ && a.size_ == b.size_ && std::memcmp(a.bytes_.data(), b.bytes_.data(), a.size_) == 0;
  }

 private:
  friend InformationSet capture(const GameState& s, int perspective);

  std::array<std::uint8_t, kCapacity> bytes_{};
  std::uint16_t size_ = 0;
  std::uint64_t hash_ = 0;
};

InformationSet capture(const GameState& s, int perspective);

}  // namespace miniccg

template <>
struct std::hash<miniccg::InformationSet> {
  std::size_t operator()(const miniccg::InformationSet& is) const noexcept { return is.hash(); }
};
