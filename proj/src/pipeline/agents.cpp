#include "miniccg/pipeline/agents.h"

#include "miniccg/engine/errors.h"
#include "miniccg/engine/rules.h"
#include "miniccg/pipeline/bundle.h"

namespace miniccg {

Preset parse_preset(std::string_view name) {
  if (name == "random") return Preset::Random;
  if (name == "mcts") return Preset::Mcts;
  if (name == "mctsV") return Preset::MctsV;
  if (name == "mctsS") return Preset::MctsS;
  if (name == "mctsVS") return Preset::MctsVS;
  throw ConfigError("unknown preset '" + std::string(name) + "' (random, mcts, mctsV, mctsS, mctsVS)");
}

std::string_view to_string(Preset p) {
  switch (p) {
    case Preset::Random: return "random";
    case Preset::Mcts: return "mcts";
    case Preset::MctsV: return "mctsV";
    case Preset::MctsS: return "mctsS";
    case Preset::MctsVS: return "mctsVS";
  }
  return "?";
}

bool uses_value(Preset p) { return p == Preset::MctsV || p == Preset::MctsVS; }
bool uses_solver(Preset p) { return p == Preset::MctsS || p == Preset::MctsVS; }

std::string BotSpec::name() const { return label.empty() ? std::string(to_string(preset)) : label; }

void BotSpec::resolve() {
  if (!uses_value(preset) || model) return;
  if (bundle_path.empty()) throw ConfigError(name() + ": preset " + std::string(to_string(preset)) + " needs field 'bundle'");
  model = std::make_shared<const ValueModel>(load_bundle(bundle_path));
}

SearchConfig search_config(const BotSpec& spec, std::uint64_t seed) {
  SearchConfig cfg;
  cfg.c = spec.c;
  cfg.iterations = spec.iterations;
  cfg.seconds = spec.seconds;
  cfg.mode = spec.mode;
  cfg.bias = spec.bias;
  cfg.seed = seed;
  if (uses_value(spec.preset)) {
    cfg.cutoff = CutoffKind::ValueNetwork;
    cfg.tree_bias = true;
  } else {
    cfg.bias.policy = PolicyKind::Uniform;
  }
  return cfg;
}

namespace {

class RandomAgent final : public Agent {
 public:
  explicit RandomAgent(std::uint64_t seed) : rng_(seed) {}
  Action act(const GameState& s) override {
    MoveList moves = legal_moves(s);
    return moves[rng_.below(moves.size())];
  }

 private:
  Rng rng_;
};

class SearchAgent final : public Agent {
 public:
  SearchAgent(const SearchConfig& cfg, std::shared_ptr<const ValueModel> model) : searcher_(cfg, std::move(model)) {}
  Action act(const GameState& s) override { return searcher_.choose(s); }

 private:
  Searcher searcher_;
};

}  // namespace

std::unique_ptr<Agent> make_agent(const BotSpec& spec, std::uint64_t seed) {
  if (spec.preset == Preset::Random) return std::make_unique<RandomAgent>(seed);
  if (uses_value(spec.preset) && !spec.model) {
    throw ConfigError(spec.name() + ": preset " + std::string(to_string(spec.preset)) + " needs field 'bundle'");
  }
  return std::make_unique<SearchAgent>(search_config(spec, seed), uses_value(spec.preset) ? spec.model : nullptr);
}

}  // namespace miniccg
