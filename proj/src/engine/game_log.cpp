#include "miniccg/engine/game_log.h"

#include <cstdio>

#include "json.hpp"
#include "miniccg/engine/rules.h"

namespace miniccg {

namespace {
std::string hex(std::uint64_t v) {
  char buf[19];
  std::snprintf(buf, sizeof buf, "0x%016llx", static_cast<unsigned long long>(v));
  return buf;
}
}  // namespace

std::string to_json_line(const LogRecord& r) {
  nlohmann::ordered_json j;
  j["turn"] = r.turn;
  j["actor"] = r.actor;
  j["action"] = to_string(r.action);
  j["rng_draws"] = r.rng_draws;
  j["state_hash"] = hex(r.state_hash);
  if (r.is_hash) j["is_hash"] = hex(*r.is_hash);
  return j.dump();
}

LogRecord apply_logged(GameState& s, Action a) {
  LogRecord r;
  r.turn = s.turn;
  r.actor = s.active;
  r.action = a;
  std::uint64_t before = s.rng.counter();
  apply_in_place(s, a);
  r.rng_draws = s.rng.counter() - before;
  r.state_hash = state_hash(s);
  return r;
}

}  // namespace miniccg
