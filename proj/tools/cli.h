#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "miniccg/engine/game_state.h"

namespace miniccg::cli {

// Runs the command line; returns the process exit code. Results go to
// `out`, progress and diagnostics to `err`, and `in` feeds interactive play.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

// What `perspective` sees of `s`: the opponent's hand only as a count.
std::string render_view(const GameState& s, int perspective);
// Menu text for one action, with card names where they help.
std::string describe_action(const GameState& s, Action a);

}  // namespace miniccg::cli
