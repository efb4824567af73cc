#include "miniccg/engine/action.h"

#include <cstdlib>
#include <string_view>

namespace miniccg {

namespace {

constexpr std::string_view kNames[] = {
    "EndTurn",     "UseSolver",    "HeroPower",      "PlayCard", "ChooseAttacker",
    "PlaceTarget", "EffectTarget", "ChooseDefender", "Discover",
};

bool has_arg(ActionKind kind) {
  return kind != ActionKind::EndTurn && kind != ActionKind::UseSolver && kind != ActionKind::HeroPower;
}

}  // namespace

std::string to_string(Action a) {
  std::string out(kNames[static_cast<int>(a.kind)]);
  if (has_arg(a.kind)) out += "(" + std::to_string(a.arg) + ")";
  return out;
}

std::optional<Action> parse_action(const std::string& text) {
  for (int k = 0; k < static_cast<int>(std::size(kNames)); ++k) {
    std::string_view name = kNames[k];
    if (text.compare(0, name.size(), name) != 0) continue;
    auto kind = static_cast<ActionKind>(k);
    std::string_view rest = std::string_view(text).substr(name.size());
    if (!has_arg(kind)) {
      if (rest.empty()) return Action{kind, 0};
      continue;
    }
    if (rest.size() < 3 || rest.front() != '(' || rest.back() != ')') continue;
    std::string digits(rest.substr(1, rest.size() - 2));
    char* end = nullptr;
    long v = std::strtol(digits.c_str(), &end, 10);
    if (end == digits.c_str() || *end != '\0' || v < 0 || v > 255) return std::nullopt;
    return Action{kind, static_cast<std::uint8_t>(v)};
  }
  return std::nullopt;
}

}  // namespace miniccg
