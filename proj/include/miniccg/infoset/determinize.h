#pragma once

#include <cstdint>
#include <string_view>

#include "miniccg/engine/game_state.h"

namespace miniccg {

enum class DeterminizationMode : std::uint8_t { Random, Cheater };

DeterminizationMode parse_determinization(std::string_view name);
std::string_view to_string(DeterminizationMode mode);

// Samples a perfect-information state consistent with what `perspective`
// observes in `s`.
//
// Random: the perspective player's deck is reshuffled; the opponent's
// deck-drawn hand cards and deck are repartitioned uniformly from the
// opponent's unseen cards (decklist minus everything played); opponent
// Discover picks are redrawn from the Discover pool; the random stream is
// reseeded. The Coin stays where it is: everyone saw it dealt.
//
// Cheater: the true state, unchanged.
//
// Either way capture(result, perspective) == capture(s, perspective).
GameState determinize(const GameState& s, int perspective, DeterminizationMode mode, std::uint64_t seed);

}  // namespace miniccg
