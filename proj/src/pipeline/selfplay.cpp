#include "miniccg/pipeline/selfplay.h"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>

#include "miniccg/engine/rules.h"

namespace miniccg {

int default_workers() {
  if (const char* env = std::getenv("MINICCG_WORKERS")) {
    int n = std::atoi(env);
    if (n > 0) return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& fn) {
  if (workers <= 0) workers = default_workers();
  workers = static_cast<int>(std::min<std::size_t>(workers, n));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  auto work = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < n;) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(error_mu);
        if (!error) error = std::current_exception();
        next = n;
      }
    }
  };
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

GameRecord play_game(const BotSpec& seat0, const BotSpec& seat1, std::uint64_t seed, const GameSetup& setup,
                     bool record_states) {
  GameRecord rec;
  rec.seed = seed;
  GameState s = new_game(setup.deck0, setup.deck1, seed, *setup.pool);
  s.players[0].solver_enabled = uses_solver(seat0.preset);
  s.players[1].solver_enabled = uses_solver(seat1.preset);
  std::unique_ptr<Agent> agents[2] = {make_agent(seat0, derive_seed(seed, 1)), make_agent(seat1, derive_seed(seed, 2))};
  if (record_states) rec.states.push_back(s);
  while (!s.terminal()) {
    Action a = agents[s.active]->act(s);
    apply_in_place(s, a);
    if (record_states && a.kind == ActionKind::EndTurn && !s.terminal()) rec.states.push_back(s);
  }
  rec.score = *result(s);
  rec.turns = s.turn;
  return rec;
}

std::vector<GameRecord> generate_games(const BotSpec& bot0, const BotSpec& bot1, std::size_t n, std::uint64_t seed,
                                       const GenerateOptions& options) {
  std::vector<GameRecord> out(n);
  std::atomic<std::size_t> done{0};
  std::mutex progress_mu;
  parallel_for(n, options.workers, [&](std::size_t i) {
    const bool swapped = options.alternate_seats && (i % 2 == 1);
    const BotSpec& a = swapped ? bot1 : bot0;
    const BotSpec& b = swapped ? bot0 : bot1;
    out[i] = play_game(a, b, derive_seed(seed, i), options.setup, options.record_states);
    out[i].game_index = i;
    out[i].swapped = swapped;
    std::size_t d = ++done;
    if (options.progress) {
      std::lock_guard lock(progress_mu);
      options.progress(d, n);
    }
  });
  return out;
}

std::vector<TrainingSample> harvest(const std::vector<GameRecord>& records, double p, std::uint64_t seed,
                                    const FeatureLayout& layout, const EmbeddingTable& emb, int generation) {
  std::vector<TrainingSample> out;
  Rng rng(seed);
  for (const GameRecord& rec : records) {
    for (const GameState& st : rec.states) {
      if (rng.uniform() >= p) continue;
      TrainingSample t;
      t.features = vectorize(st, st.active, layout, emb);
      t.score = {static_cast<float>(rec.score[st.active]), static_cast<float>(rec.score[st.active ^ 1])};
      t.meta = {generation, static_cast<std::int32_t>(rec.game_index), st.turn, st.active};
      out.push_back(std::move(t));
    }
  }
  return out;
}

void SampleBuffer::push(TrainingSample s) {
  if (capacity_ == 0) return;
  if (samples_.size() < capacity_) {
    samples_.push_back(std::move(s));
    return;
  }
  samples_[head_] = std::move(s);
  head_ = (head_ + 1) % capacity_;
}

void SampleBuffer::push(std::vector<TrainingSample> batch) {
  for (auto& s : batch) push(std::move(s));
}

std::vector<TrainingSample> SampleBuffer::ordered() const {
  std::vector<TrainingSample> out;
  out.reserve(samples_.size());
  for (std::size_t i = 0; i < samples_.size(); ++i) out.push_back((*this)[i]);
  return out;
}

}  // namespace miniccg
