#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

#include "miniccg/engine/action.h"
#include "miniccg/engine/game_state.h"

namespace miniccg {

// One replay record per applied action, written as a JSON line:
// {"turn":3,"actor":0,"action":"PlayCard(1)","rng_draws":2,
//  "state_hash":"0x...","is_hash":"0x..."}
struct LogRecord {
  int turn = 0;
  int actor = 0;
  Action action;
  std::uint64_t rng_draws = 0;
  std::uint64_t state_hash = 0;
  std::optional<std::uint64_t> is_hash;
};

std::string to_json_line(const LogRecord& r);

// Applies `a` to `s` and returns the record describing the step.
LogRecord apply_logged(GameState& s, Action a);

class GameLog {
 public:
  explicit GameLog(std::ostream& out) : out_(out) {}
  void write(const LogRecord& r) { out_ << to_json_line(r) << '\n'; }

 private:
  std::ostream& out_;
};

}  // namespace miniccg
