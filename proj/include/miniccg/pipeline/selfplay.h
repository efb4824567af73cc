#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "miniccg/engine/game_state.h"
#include "miniccg/features/vectorizer.h"
#include "miniccg/pipeline/agents.h"

namespace miniccg {

struct GameSetup {
  DeckList deck0 = CardPool::builtin().deck("Aggro");
  DeckList deck1 = CardPool::builtin().deck("Control");
  const CardPool* pool = &CardPool::builtin();
};

struct GameRecord {
  std::uint64_t game_index = 0;
  std::uint64_t seed = 0;
  bool swapped = false;  // bot1 sat in seat 0
  Score score{};         // by seat
  int turns = 0;
  // Snapshot at the start of every turn (the opening position included).
  std::vector<GameState> states;

  // Score of bot0 / bot1 regardless of seating.
  double bot_score(int bot) const { return score[bot ^ (swapped ? 1 : 0)]; }
};

struct GenerateOptions {
  GameSetup setup;
  bool alternate_seats = false;  // odd games put bot1 in seat 0
  bool record_states = true;
  int workers = 0;  // 0: MINICCG_WORKERS or hardware concurrency
  std::function<void(std::size_t done, std::size_t total)> progress;
};

// Worker count from MINICCG_WORKERS, else the hardware thread count.
int default_workers();

// Runs fn(i) for i in [0, n) on a pool of workers.
void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& fn);

// One full game between two bots in the given seats.
GameRecord play_game(const BotSpec& seat0, const BotSpec& seat1, std::uint64_t seed, const GameSetup& setup,
                     bool record_states);

// n independent games; game i uses seed derive_seed(seed, i), so results do
// not depend on scheduling.
std::vector<GameRecord> generate_games(const BotSpec& bot0, const BotSpec& bot1, std::size_t n,
                                       std::uint64_t seed, const GenerateOptions& options = {});

struct SampleMeta {
  std::int32_t generation = 0;
  std::int32_t game = 0;
  std::int32_t turn = 0;
  std::int32_t seat = 0;  // player to move, whose side the features encode
  friend bool operator==(const SampleMeta&, const SampleMeta&) = default;
};

struct TrainingSample {
  std::vector<float> features;
  std::array<float, 2> score{};  // mover first
  SampleMeta meta;
  friend bool operator==(const TrainingSample&, const TrainingSample&) = default;
};

// Keeps each recorded state independently with probability p and labels it
// with its game's final score, mover first.
std::vector<TrainingSample> harvest(const std::vector<GameRecord>& records, double p, std::uint64_t seed,
                                    const FeatureLayout& layout, const EmbeddingTable& emb, int generation = 0);

// Bounded FIFO: pushing past capacity evicts the oldest samples.
class SampleBuffer {
 public:
  explicit SampleBuffer(std::size_t capacity = 100000) : capacity_(capacity) {}
  void push(TrainingSample s);
  void push(std::vector<TrainingSample> batch);
  std::size_t size() const { return samples_.size(); }
  std::size_t capacity() const { return capacity_; }
  const std::vector<TrainingSample>& samples() const { return samples_; }
  const TrainingSample& operator[](std::size_t i) const { return samples_[(head_ + i) % samples_.size()]; }
  // Oldest first.
  std::vector<TrainingSample> ordered() const;

 private:
  std::size_t capacity_;
  std::vector<TrainingSample> samples_;
  std::size_t head_ = 0;  // index of the oldest sample once full
};

}  // namespace miniccg
