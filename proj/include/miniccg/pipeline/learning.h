#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "miniccg/features/embeddings.h"
#include "miniccg/neural/value_network.h"
#include "miniccg/pipeline/selfplay.h"

namespace miniccg {

// Search bot with the true state and a small budget, as used for data.
inline BotSpec data_bot(Preset preset) {
  BotSpec b;
  b.preset = preset;
  b.iterations = 100;
  b.mode = DeterminizationMode::Cheater;
  return b;
}

struct LearningConfig {
  int bootstrap_games = 2000;
  int iterations = 10;  // self-play iterations after the bootstrap
  int games_per_iteration = 500;
  std::size_t buffer_capacity = 100000;
  double harvest_p = 0.5;
  // Data generation: plain search with the true state, per the bootstrap
  // recipe; later iterations swap in the latest bundle.
  BotSpec bootstrap_bot = data_bot(Preset::Mcts);
  BotSpec selfplay_bot = data_bot(Preset::MctsV);
  TrainOptions train;
  SkipGramOptions embeddings;
  std::uint64_t seed = 1;
  std::string out_dir = "run";
  int workers = 0;
  GameSetup setup;
};

struct IterationMetrics {
  int iteration = 0;
  int games = 0;
  std::size_t samples_added = 0;
  std::size_t buffer_size = 0;
  double accuracy[2] = {0.0, 0.0};  // validation accuracy per seat
  std::size_t validation_counted[2] = {0, 0};
  std::string bundle;
  double seconds = 0.0;
};

struct LearningReport {
  std::vector<IterationMetrics> iterations;
  std::vector<std::string> bundles;
};

std::string bundle_name(int iteration);

// Iteration 0 trains on bootstrap games; iterations 1..N each add self-play
// games to the FIFO buffer and retrain both seat networks from scratch.
// Bundles, the buffer and progress.json are written to out_dir after every
// iteration; a rerun picks up after the last completed one.
LearningReport iterate_learning(const LearningConfig& config,
                                const std::function<void(const std::string&)>& log = nullptr);

// Splits samples by seat and trains one network per seat.
struct SeatTraining {
  TrainReport seat[2];
};
SeatTraining train_seat_networks(const std::vector<TrainingSample>& samples, int dim, const TrainOptions& options);

}  // namespace miniccg
