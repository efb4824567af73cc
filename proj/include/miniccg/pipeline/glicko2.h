#pragma once

#include <vector>

namespace miniccg {

struct GlickoRating {
  double rating = 1500.0;
  double deviation = 350.0;
  double volatility = 0.06;
};

struct GlickoResult {
  GlickoRating opponent;
  double score = 0.0;  // 0, 0.5 or 1
};

struct GlickoOptions {
  double tau = 0.5;
  double tolerance = 1e-6;
};

// One rating period of the Glicko-2 procedure. With no results only the
// deviation grows.
GlickoRating glicko2_update(const GlickoRating& r, const std::vector<GlickoResult>& results,
                            const GlickoOptions& options = {});

}  // namespace miniccg
