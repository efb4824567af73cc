#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "miniccg/pipeline/glicko2.h"
#include "miniccg/pipeline/selfplay.h"

namespace miniccg {

// Plays one game between bots `a` (seat 0) and `b` (seat 1) and returns the
// score by seat.
using MatchFn = std::function<Score(std::size_t a, std::size_t b, std::uint64_t seed)>;

struct RatingOptions {
  int matches_per_pair = 100;
  int period = 50;  // games per rating period
  std::uint64_t seed = 1;
  int workers = 0;
  GlickoOptions glicko;
  std::function<void(std::size_t done, std::size_t total)> progress;
};

struct RatedBot {
  std::size_t index = 0;
  std::string label;
  GlickoRating overall;
  GlickoRating seat[2];  // strength when playing seat 0 / seat 1
  int games = 0;
  double points = 0.0;
};

struct RatingReport {
  std::vector<RatedBot> ranked;  // best overall rating first
  std::size_t best_seat[2] = {0, 0};  // bot index with the best seat rating
  int games = 0;
};

// Round robin: every ordered pair plays matches_per_pair / 2 games per
// seating. Games are shuffled, played in blocks of `period`, and after each
// block every bot gets one Glicko-2 update from the games it played.
RatingReport rate_generations(const std::vector<std::string>& labels, const MatchFn& match,
                              const RatingOptions& options);
// Convenience overload that plays real games between the bots.
RatingReport rate_generations(const std::vector<BotSpec>& bots, const GameSetup& setup,
                              const RatingOptions& options);

std::string to_text(const RatingReport& report);
std::string to_json(const RatingReport& report);

}  // namespace miniccg
