#include "miniccg/pipeline/config.h"

#include <fstream>
#include <set>

#include "miniccg/engine/errors.h"

namespace miniccg {

namespace {

using nlohmann::json;

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + ": expected an object");
  for (const auto& [key, value] : j.items()) {
    if (!allowed.count(key)) throw ConfigError("unknown key '" + (where.empty() ? key : where + "." + key) + "'");
  }
}

std::string path_of(const std::string& where, const std::string& key) { return where.empty() ? key : where + "." + key; }

template <typename T>
void read(const json& j, const std::string& key, T& out, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) return;
  try {
    out = it->get<T>();
  } catch (const json::exception&) {
    throw ConfigError("bad value for '" + path_of(where, key) + "'");
  }
}

BiasConfig parse_bias(const json& j, const std::string& where) {
  check_keys(j, {"tree_weight", "epsilon", "temperature", "cutoff_min_steps", "policy"}, where);
  BiasConfig b;
  read(j, "tree_weight", b.tree_weight, where);
  read(j, "epsilon", b.epsilon, where);
  read(j, "temperature", b.temperature, where);
  read(j, "cutoff_min_steps", b.cutoff_min_steps, where);
  std::string policy(to_string(b.policy));
  read(j, "policy", policy, where);
  b.policy = parse_policy(policy);
  if (b.tree_weight < 0 || b.epsilon < 0 || b.epsilon > 1 || b.temperature <= 0 || b.cutoff_min_steps < 0) {
    throw ConfigError(where + ": value out of range");
  }
  return b;
}

DeckList parse_deck(const json& j, const CardPool& pool, const std::string& where) {
  DeckList deck;
  if (j.is_string()) {
    deck = pool.deck(j.get<std::string>());
  } else if (j.is_array()) {
    for (const auto& id : j) {
      if (!id.is_number_integer()) throw ConfigError(where + ": card ids must be integers");
      int v = id.get<int>();
      if (!pool.contains(v)) throw ConfigError(where + ": unknown card id " + std::to_string(v));
      deck.push_back(static_cast<CardId>(v));
    }
  } else {
    throw ConfigError(where + ": expected a deck name or a list of card ids");
  }
  try {
    pool.validate_deck(deck);
  } catch (const ConfigError& e) {
    throw ConfigError(where + ": " + e.what());
  }
  return deck;
}

TrainOptions parse_train(const json& j, const std::string& where) {
  check_keys(j, {"split", "batch", "epochs", "lr"}, where);
  TrainOptions t;
  read(j, "split", t.split, where);
  read(j, "batch", t.batch, where);
  read(j, "epochs", t.epochs, where);
  read(j, "lr", t.lr, where);
  if (!(t.split > 0 && t.split < 1) || t.batch == 0 || t.epochs < 1 || t.lr <= 0) {
    throw ConfigError(where + ": value out of range");
  }
  return t;
}

SkipGramOptions parse_embeddings(const json& j, const std::string& where) {
  check_keys(j, {"dim", "context", "epochs", "lr", "decay_every", "decay_factor", "negatives"}, where);
  SkipGramOptions o;
  read(j, "dim", o.dim, where);
  read(j, "context", o.context, where);
  read(j, "epochs", o.epochs, where);
  read(j, "lr", o.lr, where);
  read(j, "decay_every", o.decay_every, where);
  read(j, "decay_factor", o.decay_factor, where);
  read(j, "negatives", o.negatives, where);
  if (o.dim < 1 || o.dim > 16) throw ConfigError(path_of(where, "dim") + ": must be in 1..16");
  return o;
}

}  // namespace

BotSpec parse_bot(const json& j, const std::string& where, bool bundle_optional) {
  check_keys(j, {"preset", "iterations", "seconds", "bundle", "determinization", "c", "label", "bias"}, where);
  BotSpec b;
  std::string preset = "mcts";
  read(j, "preset", preset, where);
  b.preset = parse_preset(preset);
  read(j, "iterations", b.iterations, where);
  read(j, "seconds", b.seconds, where);
  read(j, "bundle", b.bundle_path, where);
  std::string mode = "random";
  read(j, "determinization", mode, where);
  b.mode = parse_determinization(mode);
  read(j, "c", b.c, where);
  read(j, "label", b.label, where);
  if (j.contains("bias")) b.bias = parse_bias(j["bias"], path_of(where, "bias"));
  if (j.contains("seconds") && !j.contains("iterations")) b.iterations = 0;
  if (b.iterations < 0 || b.seconds < 0 || (b.iterations == 0 && b.seconds == 0 && b.preset != Preset::Random)) {
    throw ConfigError(where + ": needs a positive 'iterations' or 'seconds' budget");
  }
  if (uses_value(b.preset) && b.bundle_path.empty() && !bundle_optional) {
    throw ConfigError("missing field '" + path_of(where, "bundle") + "' required by preset " + preset);
  }
  return b;
}

json bot_to_json(const BotSpec& b) {
  json j{{"preset", std::string(to_string(b.preset))},
         {"iterations", b.iterations},
         {"seconds", b.seconds},
         {"determinization", std::string(to_string(b.mode))},
         {"c", b.c},
         {"bias",
          {{"tree_weight", b.bias.tree_weight},
           {"epsilon", b.bias.epsilon},
           {"temperature", b.bias.temperature},
           {"cutoff_min_steps", b.bias.cutoff_min_steps},
           {"policy", std::string(to_string(b.bias.policy))}}}};
  if (!b.bundle_path.empty()) j["bundle"] = b.bundle_path;
  if (!b.label.empty()) j["label"] = b.label;
  return j;
}

const CardPool& RunConfig::pool() const { return loaded_pool_ ? *loaded_pool_ : CardPool::builtin(); }

GameSetup RunConfig::setup() const { return GameSetup{deck0, deck1, &pool()}; }

RunConfig parse_run_config(const json& j) {
  check_keys(j, {"seed", "cards", "decks", "workers", "selfplay", "learning", "rate", "match"}, "");
  RunConfig c;
  read(j, "seed", c.seed, "");
  read(j, "cards", c.cards_path, "");
  read(j, "workers", c.workers, "");
  if (!c.cards_path.empty()) c.loaded_pool_ = std::make_shared<CardPool>(CardPool::from_file(c.cards_path));
  const CardPool& pool = c.pool();

  c.deck0 = parse_deck(json("Aggro"), pool, "decks.player0");
  c.deck1 = parse_deck(json("Control"), pool, "decks.player1");
  if (j.contains("decks")) {
    const json& d = j["decks"];
    check_keys(d, {"player0", "player1"}, "decks");
    if (d.contains("player0")) c.deck0 = parse_deck(d["player0"], pool, "decks.player0");
    if (d.contains("player1")) c.deck1 = parse_deck(d["player1"], pool, "decks.player1");
  }
  const GameSetup setup = c.setup();

  if (j.contains("selfplay")) {
    const json& s = j["selfplay"];
    check_keys(s, {"bot0", "bot1", "games", "harvest_p", "output", "bundle"}, "selfplay");
    if (s.contains("bot0")) c.selfplay.bot0 = parse_bot(s["bot0"], "selfplay.bot0");
    if (s.contains("bot1")) c.selfplay.bot1 = parse_bot(s["bot1"], "selfplay.bot1");
    read(s, "games", c.selfplay.games, "selfplay");
    read(s, "harvest_p", c.selfplay.harvest_p, "selfplay");
    read(s, "output", c.selfplay.output, "selfplay");
    read(s, "bundle", c.selfplay.bundle, "selfplay");
    if (c.selfplay.games < 0) throw ConfigError("selfplay.games: must be >= 0");
    if (!(c.selfplay.harvest_p > 0 && c.selfplay.harvest_p <= 1)) throw ConfigError("selfplay.harvest_p: must be in (0, 1]");
  }

  c.learning.seed = c.seed;
  c.learning.workers = c.workers;
  c.learning.setup = setup;
  if (j.contains("learning")) {
    const json& l = j["learning"];
    check_keys(l, {"bootstrap_games", "iterations", "games_per_iteration", "buffer_capacity", "harvest_p",
                   "bootstrap_bot", "selfplay_bot", "train", "embeddings", "out_dir"},
               "learning");
    read(l, "bootstrap_games", c.learning.bootstrap_games, "learning");
    read(l, "iterations", c.learning.iterations, "learning");
    read(l, "games_per_iteration", c.learning.games_per_iteration, "learning");
    read(l, "buffer_capacity", c.learning.buffer_capacity, "learning");
    read(l, "harvest_p", c.learning.harvest_p, "learning");
    read(l, "out_dir", c.learning.out_dir, "learning");
    if (l.contains("bootstrap_bot")) c.learning.bootstrap_bot = parse_bot(l["bootstrap_bot"], "learning.bootstrap_bot");
    if (l.contains("selfplay_bot")) c.learning.selfplay_bot = parse_bot(l["selfplay_bot"], "learning.selfplay_bot", true);
    if (l.contains("train")) c.learning.train = parse_train(l["train"], "learning.train");
    if (l.contains("embeddings")) c.learning.embeddings = parse_embeddings(l["embeddings"], "learning.embeddings");
  }

  c.rate.options.seed = c.seed;
  c.rate.options.workers = c.workers;
  if (j.contains("rate")) {
    const json& r = j["rate"];
    check_keys(r, {"bots", "matches_per_pair", "period", "tau", "output"}, "rate");
    if (r.contains("bots")) {
      if (!r["bots"].is_array()) throw ConfigError("rate.bots: expected a list");
      for (std::size_t i = 0; i < r["bots"].size(); ++i) {
        c.rate.bots.push_back(parse_bot(r["bots"][i], "rate.bots[" + std::to_string(i) + "]"));
      }
    }
    read(r, "matches_per_pair", c.rate.options.matches_per_pair, "rate");
    read(r, "period", c.rate.options.period, "rate");
    read(r, "tau", c.rate.options.glicko.tau, "rate");
    read(r, "output", c.rate.output, "rate");
  }

  if (j.contains("match")) {
    const json& m = j["match"];
    check_keys(m, {"pairings", "output"}, "match");
    read(m, "output", c.match.output, "match");
    if (m.contains("pairings")) {
      if (!m["pairings"].is_array()) throw ConfigError("match.pairings: expected a list");
      for (std::size_t i = 0; i < m["pairings"].size(); ++i) {
        const std::string where = "match.pairings[" + std::to_string(i) + "]";
        const json& p = m["pairings"][i];
        check_keys(p, {"p1", "p2", "games"}, where);
        if (!p.contains("p1") || !p.contains("p2")) throw ConfigError(where + ": needs 'p1' and 'p2'");
        Pairing pr;
        pr.p1 = parse_bot(p["p1"], where + ".p1");
        pr.p2 = parse_bot(p["p2"], where + ".p2");
        read(p, "games", pr.games, where);
        if (pr.games < 0) throw ConfigError(where + ".games: must be >= 0");
        c.match.pairings.push_back(pr);
      }
    }
  }
  return c;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config '" + path + "': " + e.what());
  }
  return parse_run_config(j);
}

}  // namespace miniccg
