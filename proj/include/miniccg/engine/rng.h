#pragma once

#include <cstdint>

namespace miniccg {

// Counter-based generator. Bit-exact definition, so other implementations can
// replay games:
//
//   next():  counter += 1
//            z  = seed + counter * 0x9E3779B97F4A7C15   (mod 2^64)
//            z  = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//            z  = (z ^ (z >> 27)) * 0x94D049BB133111EB
//            return z ^ (z >> 31)
//
//   below(n): high 64 bits of the 128-bit product next() * n   (n >= 1)
//
// Shuffles are Fisher-Yates from the last index down: for i = n-1 .. 1,
// swap(a[i], a[below(i + 1)]).
class Rng {
 public:
  constexpr Rng() = default;
  constexpr explicit Rng(std::uint64_t seed) : seed_(seed) {}

  static constexpr std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  constexpr std::uint64_t next() {
    ++counter_;
    return mix(seed_ + counter_ * 0x9E3779B97F4A7C15ULL);
  }

  // Uniform integer in [0, n).
  constexpr std::uint32_t below(std::uint32_t n) {
    return static_cast<std::uint32_t>(
        (static_cast<unsigned __int128>(next()) * n) >> 64);
  }

  // Uniform real in [0, 1) with 53 random bits.
  constexpr double uniform() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  template <typename T>
  constexpr void shuffle(T* first, std::uint32_t n) {
    for (std::uint32_t i = n; i > 1; --i) {
      std::uint32_t j = below(i);
      T tmp = first[i - 1];
      first[i - 1] = first[j];
      first[j] = tmp;
    }
  }

  constexpr std::uint64_t seed() const { return seed_; }
  constexpr std::uint64_t counter() const { return counter_; }

  friend constexpr bool operator==(const Rng&, const Rng&) = default;

 private:
  std::uint64_t seed_ = 0;
  std::uint64_t counter_ = 0;
};

// Derives an independent stream seed from a parent seed and a tag.
constexpr std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t tag) {
  return Rng::mix(Rng::mix(parent ^ 0x2545F4914F6CDD1DULL) + tag * 0x9E3779B97F4A7C15ULL);
}

}  // namespace miniccg
