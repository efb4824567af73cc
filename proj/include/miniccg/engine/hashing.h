#pragma once

#include <cstdint>
#include <cstring>
#include <span>

#include "miniccg/engine/rng.h"

namespace miniccg {

// Word-at-a-time hash; every step goes through the bijective splitmix
// finaliser.
class Hasher {
 public:
  explicit constexpr Hasher(std::uint64_t seed = 0x51ED270B27A4F1B3ULL) : h_(seed) {}

  constexpr void add(std::uint64_t word) { h_ = Rng::mix(h_ + 0x9E3779B97F4A7C15ULL + word); }

  void add_bytes(std::span<const std::uint8_t> bytes) {
    std::size_t i = 0;
    for (; i + 8 <= bytes.size(); i += 8) {
      std::uint64_t w;
      std::memcpy(&w, bytes.data() + i, 8);
      add(w);
    }
    std::uint64_t tail = 0;
    for (std::size_t k = 0; i + k < bytes.size(); ++k) tail |= std::uint64_t{bytes[i + k]} << (8 * k);
    add(tail ^ (std::uint64_t{bytes.size()} << 56));
  }

  constexpr std::uint64_t digest() const { return h_; }

 private:
  std::uint64_t h_;
};

}  // namespace miniccg
