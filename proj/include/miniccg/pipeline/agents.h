#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>

#include "miniccg/engine/game_state.h"
#include "miniccg/search/mcts.h"

namespace miniccg {

enum class Preset : std::uint8_t { Random, Mcts, MctsV, MctsS, MctsVS };

Preset parse_preset(std::string_view name);
std::string_view to_string(Preset p);
// V presets cut simulations off with the value model and bias the tree with
// it; S presets may play the UseSolver action.
bool uses_value(Preset p);
bool uses_solver(Preset p);

struct BotSpec {
  Preset preset = Preset::Mcts;
  int iterations = 1000;  // per decision; 0 means use `seconds`
  double seconds = 0.0;
  std::string bundle_path;  // required by V presets unless `model` is set
  DeterminizationMode mode = DeterminizationMode::Random;
  double c = 1.4142135623730951;
  BiasConfig bias;
  std::string label;  // display name; defaults to the preset name
  std::shared_ptr<const ValueModel> model;

  std::string name() const;
  // Loads `model` from `bundle_path` if needed. Throws ConfigError naming
  // the missing field for a V preset without either.
  void resolve();
};

class Agent {
 public:
  virtual ~Agent() = default;
  virtual Action act(const GameState& s) = 0;
};

// `seed` makes the agent's choices reproducible.
std::unique_ptr<Agent> make_agent(const BotSpec& spec, std::uint64_t seed);
SearchConfig search_config(const BotSpec& spec, std::uint64_t seed);

}  // namespace miniccg
