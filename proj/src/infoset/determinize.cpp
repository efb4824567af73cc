#include "miniccg/infoset/determinize.h"

#include <algorithm>
#include <string>

#include "miniccg/engine/errors.h"

namespace miniccg {

DeterminizationMode parse_determinization(std::string_view name) {
  if (name == "random") return DeterminizationMode::Random;
  if (name == "cheater") return DeterminizationMode::Cheater;
  throw ConfigError("unknown determinization mode '" + std::string(name) + "' (expected random|cheater)");
}

std::string_view to_string(DeterminizationMode mode) {
  return mode == DeterminizationMode::Random ? "random" : "cheater";
}

GameState determinize(const GameState& s, int perspective, DeterminizationMode mode, std::uint64_t seed) {
  if (mode == DeterminizationMode::Cheater) return s;

  GameState out = s;
  Rng rng(seed);
  PlayerState& own = out.players[perspective];
  PlayerState& opp = out.players[perspective ^ 1];

  rng.shuffle(own.deck.data(), own.deck_size);

  std::array<CardId, kDeckSize + kMaxHand> unseen{};
  std::uint32_t n = 0;
  for (const HandCard& c : opp.hand) {
    if (!c.generated) unseen[n++] = c.card;
  }
  for (int i = 0; i < opp.deck_size; ++i) unseen[n++] = opp.deck[i];
  rng.shuffle(unseen.data(), n);

  const auto& discover_pool = s.pool->discover_pool();
  std::uint32_t k = 0;
  for (HandCard& c : opp.hand) {
    if (!c.generated) {
      c.card = unseen[k++];
    } else if (c.card != s.pool->coin()) {
      c.card = discover_pool[rng.below(static_cast<std::uint32_t>(discover_pool.size()))];
    }
  }
  for (int i = 0; i < opp.deck_size; ++i) opp.deck[i] = unseen[k++];

  if (out.phase == Phase::Discover && out.active != perspective) {
    std::vector<CardId> options(discover_pool.begin(), discover_pool.end());
    for (std::uint32_t i = 0; i < out.pending.option_count; ++i) {
      std::uint32_t j = i + rng.below(static_cast<std::uint32_t>(options.size()) - i);
      std::swap(options[i], options[j]);
      out.pending.options[i] = options[i];
    }
  }

  out.rng = Rng(derive_seed(seed, 0x5EED));
  return out;
}

}  // namespace miniccg
