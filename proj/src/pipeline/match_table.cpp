#include "miniccg/pipeline/match_table.h"

#include <cstdio>

#include "json.hpp"

namespace miniccg {

MatchTable run_match_table(const std::vector<Pairing>& pairings, std::uint64_t seed, const GenerateOptions& options) {
  MatchTable table;
  GenerateOptions opts = options;
  opts.alternate_seats = true;
  opts.record_states = false;
  for (std::size_t k = 0; k < pairings.size(); ++k) {
    const Pairing& p = pairings[k];
    std::vector<GameRecord> games = generate_games(p.p1, p.p2, static_cast<std::size_t>(p.games), derive_seed(seed, k), opts);
    MatchRow row{.p1 = p.p1.name(), .p2 = p.p2.name()};
    for (const GameRecord& g : games) {
      double s = g.bot_score(0);
      if (s == 1.0) {
        ++row.p1_wins;
        if (!g.swapped) ++row.p1_first_wins;
      } else if (s == 0.0) {
        ++row.p2_wins;
      } else {
        ++row.draws;
      }
    }
    table.rows.push_back(row);
  }
  return table;
}

std::string to_text(const MatchTable& table) {
  std::string out;
  char line[256];
  std::snprintf(line, sizeof line, "%-16s %8s %8s %9s %9s %-16s %6s\n", "P1", "P1 wins", "P2 wins", "P1 win %",
                "P2 win %", "P2", "draws");
  out += line;
  for (const MatchRow& r : table.rows) {
    std::snprintf(line, sizeof line, "%-16s %8d %8d %8.1f%% %8.1f%% %-16s %6d\n", r.p1.c_str(), r.p1_wins, r.p2_wins,
                  r.p1_pct(), r.p2_pct(), r.p2.c_str(), r.draws);
    out += line;
  }
  return out;
}

std::string to_json(const MatchTable& table) {
  nlohmann::ordered_json j;
  auto& rows = j["rows"] = nlohmann::ordered_json::array();
  for (const MatchRow& r : table.rows) {
    rows.push_back({{"p1", r.p1},
                    {"p1_wins", r.p1_wins},
                    {"p2_wins", r.p2_wins},
                    {"p1_pct", r.p1_pct()},
                    {"p2_pct", r.p2_pct()},
                    {"p2", r.p2},
                    {"draws", r.draws}});
  }
  return j.dump(2);
}

}  // namespace miniccg
