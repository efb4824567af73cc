#include "miniccg/pipeline/learning.h"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "json.hpp"

#include "miniccg/engine/errors.h"
#include "miniccg/pipeline/bundle.h"
#include "miniccg/pipeline/dataset_io.h"

namespace miniccg {

namespace fs = std::filesystem;

std::string bundle_name(int iteration) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "bundle_%03d.cfmb", iteration);
  return buf;
}

SeatTraining train_seat_networks(const std::vector<TrainingSample>& samples, int dim, const TrainOptions& options) {
  LabeledSet sets[2];
  sets[0].dim = sets[1].dim = dim;
  for (const TrainingSample& s : samples) sets[s.meta.seat & 1].add(s.features, s.score);
  SeatTraining out;
  for (int p = 0; p < 2; ++p) {
    TrainOptions o = options;
    o.seed = derive_seed(options.seed, static_cast<std::uint64_t>(p));
    out.seat[p] = train_epochs(sets[p], o);
  }
  return out;
}

namespace {

nlohmann::json metrics_json(const IterationMetrics& m) {
  return {{"iteration", m.iteration},
          {"games", m.games},
          {"samples_added", m.samples_added},
          {"buffer_size", m.buffer_size},
          {"accuracy", {m.accuracy[0], m.accuracy[1]}},
          {"validation_counted", {m.validation_counted[0], m.validation_counted[1]}},
          {"bundle", m.bundle},
          {"seconds", m.seconds}};
}

IterationMetrics metrics_from_json(const nlohmann::json& j) {
  IterationMetrics m;
  m.iteration = j.at("iteration");
  m.games = j.at("games");
  m.samples_added = j.at("samples_added");
  m.buffer_size = j.at("buffer_size");
  for (int p = 0; p < 2; ++p) {
    m.accuracy[p] = j.at("accuracy").at(p);
    m.validation_counted[p] = j.at("validation_counted").at(p);
  }
  m.bundle = j.at("bundle");
  m.seconds = j.at("seconds");
  return m;
}

}  // namespace

LearningReport iterate_learning(const LearningConfig& cfg, const std::function<void(const std::string&)>& log) {
  if (cfg.iterations < 0 || cfg.bootstrap_games < 1 || cfg.games_per_iteration < 1) {
    throw ConfigError("learning: bootstrap_games and games_per_iteration must be positive");
  }
  if (!(cfg.harvest_p > 0.0 && cfg.harvest_p <= 1.0)) throw ConfigError("learning: harvest_p must be in (0, 1]");
  auto say = [&](const std::string& msg) {
    if (log) log(msg);
  };

  const fs::path dir(cfg.out_dir);
  fs::create_directories(dir);
  const fs::path progress_path = dir / "progress.json";
  const fs::path buffer_path = dir / "buffer.cfds";

  LearningReport report;
  SampleBuffer buffer(cfg.buffer_capacity);
  ValueModel model;
  int start = 0;

  if (fs::exists(progress_path)) {
    nlohmann::json progress = nlohmann::json::parse(std::ifstream(progress_path));
    int completed = progress.at("completed");
    for (const auto& m : progress.at("metrics")) report.iterations.push_back(metrics_from_json(m));
    for (const auto& m : report.iterations) report.bundles.push_back((dir / m.bundle).string());
    Dataset d = load_dataset(buffer_path.string());
    buffer.push(std::move(d.samples));
    model = load_bundle((dir / bundle_name(completed)).string());
    start = completed + 1;
    say("resuming after iteration " + std::to_string(completed));
  } else {
    SkipGramOptions eo = cfg.embeddings;
    eo.seed = derive_seed(cfg.seed, 0xE3B);
    model.embeddings = train_embeddings(*cfg.setup.pool, eo);
    model.layout = FeatureLayout::standard(eo.dim);
  }

  for (int it = start; it <= cfg.iterations; ++it) {
    const auto t0 = std::chrono::steady_clock::now();
    BotSpec bot = it == 0 ? cfg.bootstrap_bot : cfg.selfplay_bot;
    if (it > 0 && uses_value(bot.preset)) bot.model = std::make_shared<const ValueModel>(model);
    const int n = it == 0 ? cfg.bootstrap_games : cfg.games_per_iteration;

    GenerateOptions go;
    go.setup = cfg.setup;
    go.workers = cfg.workers;
    go.progress = [&](std::size_t done, std::size_t total) {
      if (done % 100 == 0 || done == total) {
        say("iteration " + std::to_string(it) + ": " + std::to_string(done) + "/" + std::to_string(total) + " games");
      }
    };
    std::vector<GameRecord> records = generate_games(bot, bot, n, derive_seed(cfg.seed, 1000 + it), go);
    std::vector<TrainingSample> samples =
        harvest(records, cfg.harvest_p, derive_seed(cfg.seed, 2000 + it), model.layout, model.embeddings, it);

    IterationMetrics m;
    m.iteration = it;
    m.games = n;
    m.samples_added = samples.size();
    buffer.push(std::move(samples));
    m.buffer_size = buffer.size();

    std::vector<TrainingSample> ordered = buffer.ordered();
    TrainOptions to = cfg.train;
    to.seed = derive_seed(cfg.seed, 3000 + it);
    SeatTraining trained = train_seat_networks(ordered, model.layout.total_dim, to);
    for (int p = 0; p < 2; ++p) {
      model.nets[p] = std::move(trained.seat[p].net);
      m.accuracy[p] = trained.seat[p].validation_accuracy;
      m.validation_counted[p] = trained.seat[p].validation_counted;
    }

    m.bundle = bundle_name(it);
    save_bundle(model, (dir / m.bundle).string());
    save_dataset(buffer_path.string(), Dataset{model.layout.version(), model.layout.total_dim, std::move(ordered)});
    m.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    report.iterations.push_back(m);
    report.bundles.push_back((dir / m.bundle).string());

    nlohmann::json progress;
    progress["completed"] = it;
    progress["metrics"] = nlohmann::json::array();
    for (const auto& x : report.iterations) progress["metrics"].push_back(metrics_json(x));
    const fs::path tmp = dir / "progress.json.tmp";
    std::ofstream(tmp) << progress.dump(2) << '\n';
    fs::rename(tmp, progress_path);

    char line[160];
    std::snprintf(line, sizeof line, "iteration %d: %zu samples (buffer %zu), accuracy %.4f / %.4f, %.1fs", it,
                  m.samples_added, m.buffer_size, m.accuracy[0], m.accuracy[1], m.seconds);
    say(line);
  }
  return report;
}

}  // namespace miniccg
