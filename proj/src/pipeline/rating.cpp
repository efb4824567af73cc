#include "miniccg/pipeline/rating.h"

#include <algorithm>
#include <cstdio>

#include "json.hpp"

#include "miniccg/engine/errors.h"

namespace miniccg {

namespace {

struct Scheduled {
  std::size_t seat0, seat1;
  std::uint64_t seed;
};

}  // namespace

RatingReport rate_generations(const std::vector<std::string>& labels, const MatchFn& match,
                              const RatingOptions& options) {
  const std::size_t n = labels.size();
  if (n < 2) throw ConfigError("rate: need at least two bots");
  if (options.matches_per_pair < 1 || options.period < 1) throw ConfigError("rate: matches_per_pair and period must be positive");

  std::vector<Scheduled> schedule;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (int k = 0; k < options.matches_per_pair; ++k) {
        bool flip = k % 2 == 1;
        schedule.push_back({flip ? j : i, flip ? i : j, derive_seed(options.seed, schedule.size())});
      }
    }
  }
  Rng rng(derive_seed(options.seed, 0x5C4ED));
  rng.shuffle(schedule.data(), static_cast<std::uint32_t>(schedule.size()));

  std::vector<RatedBot> bots(n);
  for (std::size_t i = 0; i < n; ++i) {
    bots[i].index = i;
    bots[i].label = labels[i];
  }

  std::vector<Score> scores(schedule.size());
  for (std::size_t start = 0; start < schedule.size(); start += options.period) {
    const std::size_t end = std::min(schedule.size(), start + options.period);
    parallel_for(end - start, options.workers, [&](std::size_t k) {
      const Scheduled& g = schedule[start + k];
      scores[start + k] = match(g.seat0, g.seat1, g.seed);
    });

    std::vector<std::vector<GlickoResult>> overall(n), seat[2] = {std::vector<std::vector<GlickoResult>>(n),
                                                                  std::vector<std::vector<GlickoResult>>(n)};
    for (std::size_t k = start; k < end; ++k) {
      const Scheduled& g = schedule[k];
      const Score& s = scores[k];
      const std::size_t who[2] = {g.seat0, g.seat1};
      for (int p = 0; p < 2; ++p) {
        RatedBot& me = bots[who[p]];
        const RatedBot& other = bots[who[p ^ 1]];
        overall[who[p]].push_back({other.overall, s[p]});
        seat[p][who[p]].push_back({other.seat[p ^ 1], s[p]});
        me.games += 1;
        me.points += s[p];
      }
    }
    std::vector<RatedBot> next = bots;
    for (std::size_t i = 0; i < n; ++i) {
      next[i].overall = glicko2_update(bots[i].overall, overall[i], options.glicko);
      for (int p = 0; p < 2; ++p) next[i].seat[p] = glicko2_update(bots[i].seat[p], seat[p][i], options.glicko);
    }
    bots = std::move(next);
    if (options.progress) options.progress(end, schedule.size());
  }

  RatingReport report;
  report.games = static_cast<int>(schedule.size());
  for (int p = 0; p < 2; ++p) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < n; ++i) {
      if (bots[i].seat[p].rating > bots[best].seat[p].rating) best = i;
    }
    report.best_seat[p] = best;
  }
  report.ranked = bots;
  std::stable_sort(report.ranked.begin(), report.ranked.end(),
                   [](const RatedBot& a, const RatedBot& b) { return a.overall.rating > b.overall.rating; });
  return report;
}

RatingReport rate_generations(const std::vector<BotSpec>& bots, const GameSetup& setup, const RatingOptions& options) {
  std::vector<std::string> labels;
  for (const auto& b : bots) labels.push_back(b.name());
  MatchFn match = [&](std::size_t a, std::size_t b, std::uint64_t seed) {
    return play_game(bots[a], bots[b], seed, setup, false).score;
  };
  return rate_generations(labels, match, options);
}

std::string to_text(const RatingReport& report) {
  std::string out;
  char line[256];
  std::snprintf(line, sizeof line, "%-4s %-24s %9s %7s %8s %9s %9s %6s\n", "rank", "bot", "rating", "rd", "vol",
                "seat0", "seat1", "score");
  out += line;
  int rank = 1;
  for (const RatedBot& b : report.ranked) {
    std::snprintf(line, sizeof line, "%-4d %-24s %9.2f %7.2f %8.5f %9.2f %9.2f %6.3f\n", rank++, b.label.c_str(),
                  b.overall.rating, b.overall.deviation, b.overall.volatility, b.seat[0].rating, b.seat[1].rating,
                  b.games ? b.points / b.games : 0.0);
    out += line;
  }
  auto label_of = [&](std::size_t idx) {
    for (const auto& b : report.ranked) {
      if (b.index == idx) return b.label;
    }
    return std::string("?");
  };
  out += "best seat 0: " + label_of(report.best_seat[0]) + "\n";
  out += "best seat 1: " + label_of(report.best_seat[1]) + "\n";
  return out;
}

std::string to_json(const RatingReport& report) {
  nlohmann::ordered_json j;
  j["games"] = report.games;
  auto rating = [](const GlickoRating& r) {
    return nlohmann::ordered_json{{"rating", r.rating}, {"deviation", r.deviation}, {"volatility", r.volatility}};
  };
  auto& ranked = j["ranked"] = nlohmann::ordered_json::array();
  for (const RatedBot& b : report.ranked) {
    ranked.push_back({{"index", b.index},
                      {"label", b.label},
                      {"overall", rating(b.overall)},
                      {"seat0", rating(b.seat[0])},
                      {"seat1", rating(b.seat[1])},
                      {"games", b.games},
                      {"points", b.points}});
  }
  j["best_seat0"] = report.best_seat[0];
  j["best_seat1"] = report.best_seat[1];
  return j.dump(2);
}

}  // namespace miniccg
