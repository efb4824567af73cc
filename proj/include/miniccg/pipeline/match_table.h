#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "miniccg/pipeline/selfplay.h"

namespace miniccg {

struct Pairing {
  BotSpec p1;  // the bot under test
  BotSpec p2;  // its opponent
  int games = 500;
};

struct MatchRow {
  std::string p1, p2;
  int p1_wins = 0;
  int p2_wins = 0;
  int draws = 0;
  // Share of decisive games; draws are reported separately.
  double p1_pct() const { return p1_wins + p2_wins == 0 ? 0.0 : 100.0 * p1_wins / (p1_wins + p2_wins); }
  double p2_pct() const { return p1_wins + p2_wins == 0 ? 0.0 : 100.0 * p2_wins / (p1_wins + p2_wins); }
  int p1_first_wins = 0;  // p1 wins while seated first
};

struct MatchTable {
  std::vector<MatchRow> rows;
};

// Seats alternate within each pairing; game i of pairing k uses seed
// derive_seed(derive_seed(seed, k), i).
MatchTable run_match_table(const std::vector<Pairing>& pairings, std::uint64_t seed,
                           const GenerateOptions& options = {});

// Columns: P1 | P1 wins | P2 wins | P1 win % | P2 win % | P2 | draws
std::string to_text(const MatchTable& table);
// {"rows":[{"p1":..,"p1_wins":..,"p2_wins":..,"draws":..,"p1_pct":..,"p2_pct":..,"p2":..}]}
std::string to_json(const MatchTable& table);

}  // namespace miniccg
