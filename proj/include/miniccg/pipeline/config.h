#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "miniccg/pipeline/learning.h"
#include "miniccg/pipeline/match_table.h"
#include "miniccg/pipeline/rating.h"

namespace miniccg {

// Structured run configuration (JSON). Every section is optional and every
// key has a default; unknown keys are rejected with a ConfigError naming
// them. See README for the schema.
struct RunConfig {
  std::uint64_t seed = 1;
  std::string cards_path;  // empty: the built-in pool
  DeckList deck0;  // defaults: the pool's "Aggro" and "Control" lists
  DeckList deck1;
  int workers = 0;

  struct SelfPlay {
    BotSpec bot0, bot1;
    int games = 100;
    double harvest_p = 0.5;
    std::string output = "selfplay.cfds";
    std::string bundle;  // embeddings source; empty: train fresh ones
  } selfplay;

  LearningConfig learning;

  struct Rate {
    std::vector<BotSpec> bots;
    RatingOptions options;
    std::string output = "ratings.json";
  } rate;

  struct Match {
    std::vector<Pairing> pairings;
    std::string output = "match_table";  // writes .txt and .json
  } match;

  // Pool loaded from cards_path, or the built-in one.
  const CardPool& pool() const;
  GameSetup setup() const;

 private:
  std::shared_ptr<CardPool> loaded_pool_;
  friend RunConfig parse_run_config(const nlohmann::json& j);
};

RunConfig parse_run_config(const nlohmann::json& j);
RunConfig load_run_config(const std::string& path);

// Parses one bot object; `where` prefixes error messages. V presets must
// name a bundle unless `bundle_optional` (the learning loop injects one).
BotSpec parse_bot(const nlohmann::json& j, const std::string& where, bool bundle_optional = false);
nlohmann::json bot_to_json(const BotSpec& b);

}  // namespace miniccg
