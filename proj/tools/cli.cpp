#include "cli.h"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "miniccg/engine/errors.h"
#include "miniccg/engine/game_log.h"
#include "miniccg/engine/rules.h"
#include "miniccg/features/embeddings.h"
#include "miniccg/heuristics/board_solver.h"
#include "miniccg/pipeline/bundle.h"
#include "miniccg/pipeline/config.h"
#include "miniccg/pipeline/dataset_io.h"

namespace miniccg::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string char_name(const GameState& s, std::uint8_t ref) {
  const PlayerState& side = charref::is_enemy(ref) ? s.foe() : s.me();
  if (charref::is_hero(ref)) return charref::is_enemy(ref) ? "enemy hero" : "own hero";
  int idx = charref::minion_index(ref);
  if (idx < 0 || idx >= static_cast<int>(side.board.size())) return "?";
  const Minion& m = side.board[idx];
  return std::string(charref::is_enemy(ref) ? "enemy " : "own ") + s.pool->card(m.card).name + " " +
         std::to_string(m.attack) + "/" + std::to_string(m.health);
}

std::string minion_text(const GameState& s, const Minion& m) {
  std::string t = s.pool->card(m.card).name + " " + std::to_string(m.attack) + "/" + std::to_string(m.health);
  if (m.taunt) t += " taunt";
  if (m.can_attack) t += " ready";
  return t;
}

}  // namespace

std::string describe_action(const GameState& s, Action a) {
  const CardPool& pool = *s.pool;
  std::string what;
  switch (a.kind) {
    case ActionKind::EndTurn: what = "end turn"; break;
    case ActionKind::UseSolver: what = "use board solver"; break;
    case ActionKind::HeroPower: what = "hero power: " + pool.card(pool.hero_power(s.active)).name; break;
    case ActionKind::PlayCard: {
      const CardDef& c = pool.card(s.me().hand[a.arg].card);
      what = "play " + c.name + " (cost " + std::to_string(c.cost) + ")";
      break;
    }
    case ActionKind::ChooseAttacker: what = "attack with " + minion_text(s, s.me().board[a.arg]); break;
    case ActionKind::PlaceTarget: what = "place at slot " + std::to_string(a.arg); break;
    case ActionKind::EffectTarget:
    case ActionKind::ChooseDefender: what = "target " + char_name(s, a.arg); break;
    case ActionKind::Discover: what = "take " + pool.card(s.pending.options[a.arg]).name; break;
  }
  return to_string(a) + "  " + what;
}

std::string render_view(const GameState& s, int perspective) {
  std::ostringstream out;
  const CardPool& pool = *s.pool;
  const PlayerState& me = s.players[perspective];
  const PlayerState& op = s.players[perspective ^ 1];
  out << "turn " << s.turn << "  you are player " << perspective << (s.active == perspective ? " (your move)" : "")
      << "\n";
  out << "opponent  hp " << op.hero_hp << "  mana " << int(op.mana) << "/" << int(op.mana_max) << "  hand "
      << op.hand.size() << " cards  deck " << int(op.deck_size) << "\n";
  for (std::size_t i = 0; i < op.board.size(); ++i) out << "  [" << i << "] " << minion_text(s, op.board[i]) << "\n";
  out << "you       hp " << me.hero_hp << "  mana " << int(me.mana) << "/" << int(me.mana_max) << "  deck "
      << int(me.deck_size) << "\n";
  for (std::size_t i = 0; i < me.board.size(); ++i) out << "  [" << i << "] " << minion_text(s, me.board[i]) << "\n";
  out << "hand:";
  for (const HandCard& c : me.hand) out << " [" << pool.card(c.card).name << " " << pool.card(c.card).cost << "]";
  out << "\n";
  if (s.active == perspective && s.phase != Phase::Main) {
    switch (s.phase) {
      case Phase::PlaceMinion: out << "placing " << pool.card(s.pending.card).name << "\n"; break;
      case Phase::EffectTarget: out << "choose a target for " << pool.card(s.pending.card).name << "\n"; break;
      case Phase::ChooseDefender: out << "choose a defender\n"; break;
      case Phase::Discover: out << "discover a spell\n"; break;
      case Phase::Main: break;
    }
  }
  return out.str();
}

namespace {

struct Streams {
  std::istream& in;
  std::ostream& out;
  std::ostream& err;
};

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw ConfigError("cannot write '" + path + "'");
  f << text;
}

int cmd_bench(std::uint64_t games, double seconds, std::uint64_t seed, bool as_json, Streams io) {
  const CardPool& pool = CardPool::builtin();
  const DeckList& d0 = pool.deck("Aggro");
  const DeckList& d1 = pool.deck("Control");
  std::uint64_t played = 0, states = 0;
  std::uint64_t wins[3] = {0, 0, 0};
  auto t0 = std::chrono::steady_clock::now();
  auto elapsed = [&] { return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(); };
  for (;;) {
    if (seconds > 0 ? elapsed() >= seconds : played >= games) break;
    std::uint64_t game_seed = derive_seed(seed, played);
    GameState s = new_game(d0, d1, game_seed, pool);
    int steps = 0;
    Score r = run_playout(s, UniformPolicy{Rng(derive_seed(game_seed, 7))}, NoCutoff{}, &steps);
    states += steps;
    wins[r[0] == 1.0 ? 0 : r[1] == 1.0 ? 1 : 2]++;
    ++played;
  }
  double t = elapsed();
  double gps = t > 0 ? played / t : 0.0;
  double sps = t > 0 ? states / t : 0.0;
  if (as_json) {
    io.out << json{{"seed", seed}, {"games", played}, {"states", states}, {"seconds", t}, {"games_per_sec", gps},
                   {"states_per_sec", sps}, {"p0_wins", wins[0]}, {"p1_wins", wins[1]}, {"draws", wins[2]}}
                  .dump()
           << "\n";
  } else {
    char line[256];
    std::snprintf(line, sizeof line,
                  "games %llu  states %llu  seconds %.3f\ngames/sec %.1f  states/sec %.1f\np0 wins %llu  p1 wins %llu  draws %llu\n",
                  (unsigned long long)played, (unsigned long long)states, t, gps, sps, (unsigned long long)wins[0],
                  (unsigned long long)wins[1], (unsigned long long)wins[2]);
    io.out << line;
  }
  return 0;
}

int cmd_selfplay(RunConfig& cfg, Streams io) {
  auto& sp = cfg.selfplay;
  sp.bot0.resolve();
  sp.bot1.resolve();
  ValueModel model;
  if (!sp.bundle.empty()) {
    model = load_bundle(sp.bundle);
  } else {
    SkipGramOptions eo = cfg.learning.embeddings;
    eo.seed = derive_seed(cfg.seed, 0xE3B);
    model.embeddings = train_embeddings(cfg.pool(), eo);
    model.layout = FeatureLayout::standard(eo.dim);
  }
  GenerateOptions go;
  go.setup = cfg.setup();
  go.workers = cfg.workers;
  go.progress = [&](std::size_t done, std::size_t total) {
    if (done % 50 == 0 || done == total) io.err << "selfplay: " << done << "/" << total << " games\n";
  };
  auto records = generate_games(sp.bot0, sp.bot1, static_cast<std::size_t>(sp.games), cfg.seed, go);
  auto samples = harvest(records, sp.harvest_p, derive_seed(cfg.seed, 2000), model.layout, model.embeddings);
  int wins[3] = {0, 0, 0};
  for (const auto& r : records) wins[r.score[0] == 1.0 ? 0 : r.score[1] == 1.0 ? 1 : 2]++;
  const std::size_t n = samples.size();
  save_dataset(sp.output, Dataset{model.layout.version(), model.layout.total_dim, std::move(samples)});
  io.out << "games " << records.size() << "  seat0 wins " << wins[0] << "  seat1 wins " << wins[1] << "  draws "
         << wins[2] << "\nsamples " << n << " -> " << sp.output << "\n";
  return 0;
}

int cmd_train(RunConfig& cfg, Streams io) {
  LearningReport rep = iterate_learning(cfg.learning, [&](const std::string& msg) { io.err << msg << "\n"; });
  for (const auto& m : rep.iterations) {
    char line[200];
    std::snprintf(line, sizeof line, "iteration %2d  samples %7zu  buffer %7zu  accuracy %.4f %.4f  %s\n", m.iteration,
                  m.samples_added, m.buffer_size, m.accuracy[0], m.accuracy[1], m.bundle.c_str());
    io.out << line;
  }
  return 0;
}

int cmd_rate(RunConfig& cfg, const std::string& bundle_dir, const std::string& preset, int iterations, Streams io) {
  auto& bots = cfg.rate.bots;
  if (!bundle_dir.empty()) {
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(bundle_dir)) {
      if (e.path().extension() == ".cfmb") files.push_back(e.path());
    }
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
      BotSpec b;
      b.preset = parse_preset(preset);
      b.iterations = iterations;
      b.bundle_path = f.string();
      b.label = f.stem().string();
      bots.push_back(b);
    }
  }
  for (auto& b : bots) b.resolve();
  RatingOptions opts = cfg.rate.options;
  opts.progress = [&](std::size_t done, std::size_t total) { io.err << "rate: " << done << "/" << total << " games\n"; };
  RatingReport rep = rate_generations(bots, cfg.setup(), opts);
  io.out << to_text(rep);
  write_text(cfg.rate.output, to_json(rep) + "\n");
  return 0;
}

int cmd_match(RunConfig& cfg, Streams io) {
  for (auto& p : cfg.match.pairings) {
    p.p1.resolve();
    p.p2.resolve();
  }
  GenerateOptions go;
  go.setup = cfg.setup();
  go.workers = cfg.workers;
  go.progress = [&](std::size_t done, std::size_t total) {
    if (done % 50 == 0 || done == total) io.err << "match: " << done << "/" << total << " games\n";
  };
  MatchTable table = run_match_table(cfg.match.pairings, cfg.seed, go);
  std::string text = to_text(table);
  io.out << text;
  write_text(cfg.match.output + ".txt", text);
  write_text(cfg.match.output + ".json", to_json(table) + "\n");
  return 0;
}

std::string trim(std::string s) {
  auto issp = [](unsigned char c) { return std::isspace(c); };
  s.erase(s.begin(), std::find_if_not(s.begin(), s.end(), issp));
  s.erase(std::find_if_not(s.rbegin(), s.rend(), issp).base(), s.end());
  return s;
}

int cmd_play(int human, BotSpec bot, std::uint64_t seed, bool reveal, const std::string& log_path, Streams io) {
  bot.resolve();
  const CardPool& pool = CardPool::builtin();
  GameState s = new_game(pool.deck("Aggro"), pool.deck("Control"), seed, pool);
  s.players[human].solver_enabled = false;
  s.players[human ^ 1].solver_enabled = uses_solver(bot.preset);
  auto agent = make_agent(bot, derive_seed(seed, 99));
  std::ofstream log_file;
  if (!log_path.empty()) log_file.open(log_path);
  std::optional<GameLog> log;
  if (log_file) log.emplace(log_file);

  std::optional<Score> final_score;
  while (!s.terminal()) {
    if (s.active != human) {
      Action a = agent->act(s);
      io.out << "bot: " << describe_action(s, a) << "\n";
      LogRecord rec = apply_logged(s, a);
      if (log) log->write(rec);
      continue;
    }
    io.out << "\n" << (reveal ? describe(s) : render_view(s, human));
    MoveList moves = legal_moves(s);
    for (std::size_t i = 0; i < moves.size(); ++i) io.out << "  " << i << ") " << describe_action(s, moves[i]) << "\n";
    io.out << "  c) concede\n> " << std::flush;
    std::string line;
    if (!std::getline(io.in, line)) line = "concede";
    line = trim(line);
    if (line == "c" || line == "concede") {
      final_score = Score{};
      (*final_score)[human ^ 1] = 1.0;
      io.out << "you concede\n";
      break;
    }
    char* end = nullptr;
    long k = std::strtol(line.c_str(), &end, 10);
    if (line.empty() || *end != '\0' || k < 0 || k >= static_cast<long>(moves.size())) {
      io.out << "invalid choice '" << line << "', pick a number from the menu\n";
      continue;
    }
    LogRecord rec = apply_logged(s, moves[k]);
    if (log) log->write(rec);
  }
  Score r = final_score ? *final_score : *result(s);
  io.out << (r[human] == 1.0 ? "you win" : r[human] == 0.0 ? "you lose" : "draw") << "\n";
  return 0;
}

int cmd_embed(std::uint64_t seed, int epochs, const std::string& out_path, Streams io) {
  const CardPool& pool = CardPool::builtin();
  SkipGramOptions o;
  o.seed = seed;
  o.epochs = epochs;
  EmbeddingTable t = train_embeddings(pool, o);
  json j;
  j["dim"] = t.dim();
  j["seed"] = seed;
  auto& cards = j["cards"] = json::array();
  for (int c = 0; c < t.card_count(); ++c) {
    auto v = t.vector(static_cast<CardId>(c));
    cards.push_back({{"id", c}, {"name", pool.card(static_cast<CardId>(c)).name}, {"vector", std::vector<float>(v.begin(), v.end())}});
  }
  if (!out_path.empty()) write_text(out_path, j.dump(2) + "\n");
  for (int c = 0; c < t.card_count(); ++c) {
    int best = -1;
    double best_sim = -2.0;
    for (int d = 0; d < t.card_count(); ++d) {
      if (d == c) continue;
      double sim = cosine_similarity(t.vector(static_cast<CardId>(c)), t.vector(static_cast<CardId>(d)));
      if (sim > best_sim) {
        best_sim = sim;
        best = d;
      }
    }
    char line[160];
    std::snprintf(line, sizeof line, "%-18s nearest %-18s %.3f\n", pool.card(static_cast<CardId>(c)).name.c_str(),
                  pool.card(static_cast<CardId>(best)).name.c_str(), best_sim);
    io.out << line;
  }
  return 0;
}

// Position file: {"active":0,"players":[{"hero_hp":30,"board":[{"card":5,
// "attack":3,"health":3,"can_attack":true,"taunt":false}]}, {...}]}
GameState load_position(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open position '" + path + "'");
  json j = json::parse(in);
  const CardPool& pool = CardPool::builtin();
  GameState s = new_game(pool.deck("Aggro"), pool.deck("Control"), 1, pool);
  s.active = static_cast<std::uint8_t>(j.value("active", 0));
  for (int p = 0; p < 2; ++p) {
    const json& pj = j.at("players").at(p);
    PlayerState& ps = s.players[p];
    ps.hero_hp = static_cast<std::int16_t>(pj.value("hero_hp", 30));
    ps.board.clear();
    for (const json& m : pj.value("board", json::array())) {
      int card = m.at("card");
      if (!pool.contains(card) || ps.board.size() >= kMaxBoard) throw ConfigError("position: bad minion");
      Minion mn;
      mn.card = static_cast<CardId>(card);
      mn.attack = static_cast<std::int16_t>(m.value("attack", int(pool.stats(mn.card).attack)));
      mn.health = static_cast<std::int16_t>(m.value("health", int(pool.stats(mn.card).health)));
      mn.max_health = std::max(mn.health, static_cast<std::int16_t>(m.value("max_health", int(mn.health))));
      mn.can_attack = m.value("can_attack", p == s.active);
      mn.taunt = m.value("taunt", pool.stats(mn.card).taunt);
      mn.charge = pool.stats(mn.card).charge;
      ps.board.push_back(mn);
    }
  }
  return s;
}

int cmd_solve(const std::string& path, Streams io) {
  GameState s = load_position(path);
  io.out << describe(s);
  auto lethal = find_lethal(s);
  io.out << (lethal ? "lethal found\n" : "no lethal\n");
  GameState t = s;
  for (Action a : solve_board(s)) {
    io.out << describe_action(t, a) << "\n";
    apply_in_place(t, a);
  }
  io.out << "after:\n" << describe(t);
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  Streams io{in, out, err};
  CLI::App app{"MiniCCG engine, search and training pipeline"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for all subcommands");

  std::uint64_t seed = 1;
  bool seed_given = false;
  std::string config_path;

  auto* bench = app.add_subcommand("bench", "Uniform-random playout throughput");
  std::uint64_t bench_games = 100000;
  double bench_seconds = 0.0;
  bool bench_json = false;
  bench->add_option("--games", bench_games, "Number of games (ignored with --seconds)");
  bench->add_option("--seconds", bench_seconds, "Run for this long instead of a fixed game count");
  bench->add_option("--seed", seed, "Master seed");
  bench->add_flag("--json", bench_json, "Print one JSON line");

  auto add_config = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "Run configuration (JSON)")->required()->check(CLI::ExistingFile);
    sub->add_option("--seed", seed, "Override the configured master seed")->each([&](const std::string&) { seed_given = true; });
  };
  auto* selfplay = app.add_subcommand("selfplay", "Generate games and write a training dataset");
  add_config(selfplay);
  auto* train = app.add_subcommand("train", "Iterative learning: bootstrap, self-play, retrain");
  add_config(train);
  std::string out_dir;
  train->add_option("--out-dir", out_dir, "Override learning.out_dir");
  auto* rate = app.add_subcommand("rate", "Glicko-2 rating of bot generations");
  add_config(rate);
  std::string bundle_dir, rate_preset = "mctsV";
  int rate_iterations = 200;
  rate->add_option("--bundles", bundle_dir, "Also rate every .cfmb bundle in this directory");
  rate->add_option("--preset", rate_preset, "Preset for --bundles bots");
  rate->add_option("--iterations", rate_iterations, "Iterations per move for --bundles bots");
  auto* match = app.add_subcommand("match", "Run a match table (text and JSON)");
  add_config(match);

  auto* play = app.add_subcommand("play", "Play against a bot in the terminal");
  int side = 0;
  std::string preset = "mcts", bundle, det = "random", log_path;
  int iterations = 1000;
  double play_seconds = 0.0;
  bool reveal = false;
  play->add_option("--side", side, "Your seat (0 moves first)")->check(CLI::Range(0, 1));
  play->add_option("--bot", preset, "Bot preset: random, mcts, mctsV, mctsS, mctsVS");
  play->add_option("--iterations", iterations, "Bot iterations per move");
  play->add_option("--seconds", play_seconds, "Bot time per move (overrides --iterations)");
  play->add_option("--bundle", bundle, "Model bundle for V presets");
  play->add_option("--determinization", det, "random or cheater");
  play->add_option("--seed", seed, "Game seed");
  play->add_option("--log", log_path, "Write a JSON-lines game log");
  play->add_flag("--reveal", reveal, "Debug: show hidden zones");

  auto* embed = app.add_subcommand("embed", "Train card embeddings and show nearest neighbours");
  int embed_epochs = 300;
  std::string embed_out;
  embed->add_option("--seed", seed, "Seed");
  embed->add_option("--epochs", embed_epochs, "Training epochs");
  embed->add_option("--out", embed_out, "Write the table as JSON");

  auto* solve = app.add_subcommand("solve", "Run the board solver on a position file");
  std::string position;
  solve->add_option("position", position, "Position JSON")->required()->check(CLI::ExistingFile);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (bench->parsed()) {
      err << "seed " << seed << "\n";
      return cmd_bench(bench_games, bench_seconds, seed, bench_json, io);
    }
    if (play->parsed()) {
      err << "seed " << seed << "\n";
      BotSpec b;
      b.preset = parse_preset(preset);
      b.iterations = play_seconds > 0 ? 0 : iterations;
      b.seconds = play_seconds;
      b.bundle_path = bundle;
      b.mode = parse_determinization(det);
      return cmd_play(side, b, seed, reveal, log_path, io);
    }
    if (embed->parsed()) {
      err << "seed " << seed << "\n";
      return cmd_embed(seed, embed_epochs, embed_out, io);
    }
    if (solve->parsed()) return cmd_solve(position, io);

    std::uint64_t cli_seed = seed;
    RunConfig cfg = load_run_config(config_path);
    if (seed_given) {
      cfg.seed = cli_seed;
      cfg.learning.seed = cli_seed;
      cfg.rate.options.seed = cli_seed;
    }
    err << "seed " << cfg.seed << "\n";
    if (selfplay->parsed()) return cmd_selfplay(cfg, io);
    if (train->parsed()) {
      if (!out_dir.empty()) cfg.learning.out_dir = out_dir;
      return cmd_train(cfg, io);
    }
    if (rate->parsed()) return cmd_rate(cfg, bundle_dir, rate_preset, rate_iterations, io);
    if (match->parsed()) return cmd_match(cfg, io);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace miniccg::cli
