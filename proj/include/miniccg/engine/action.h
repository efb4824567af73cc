#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>

namespace miniccg {

// Kinds are declared in ordinal order: ties between actions are broken
// towards the lowest ordinal everywhere in the search.
enum class ActionKind : std::uint8_t {
  EndTurn,
  UseSolver,
  HeroPower,
  PlayCard,        // arg: hand index
  ChooseAttacker,  // arg: own board index
  PlaceTarget,     // arg: board slot 0..board size
  EffectTarget,    // arg: CharRef
  ChooseDefender,  // arg: CharRef
  Discover,        // arg: option index 0..2
};

// Character references are relative to the acting player:
//   0 own hero, 1..7 own minions, 8 enemy hero, 9..15 enemy minions.
namespace charref {
inline constexpr std::uint8_t kOwnHero = 0;
inline constexpr std::uint8_t kEnemyHero = 8;
constexpr std::uint8_t own_minion(int idx) { return static_cast<std::uint8_t>(1 + idx); }
constexpr std::uint8_t enemy_minion(int idx) { return static_cast<std::uint8_t>(9 + idx); }
constexpr bool is_enemy(std::uint8_t ref) { return ref >= kEnemyHero; }
constexpr bool is_hero(std::uint8_t ref) { return ref == kOwnHero || ref == kEnemyHero; }
constexpr int minion_index(std::uint8_t ref) { return (ref & 7) - 1; }
}  // namespace charref

struct Action {
  ActionKind kind = ActionKind::EndTurn;
  std::uint8_t arg = 0;

  static constexpr Action end_turn() { return {ActionKind::EndTurn, 0}; }
  static constexpr Action use_solver() { return {ActionKind::UseSolver, 0}; }
  static constexpr Action hero_power() { return {ActionKind::HeroPower, 0}; }
  static constexpr Action play_card(int hand_idx) { return {ActionKind::PlayCard, static_cast<std::uint8_t>(hand_idx)}; }
  static constexpr Action choose_attacker(int board_idx) {
    return {ActionKind::ChooseAttacker, static_cast<std::uint8_t>(board_idx)};
  }
  static constexpr Action place(int slot) { return {ActionKind::PlaceTarget, static_cast<std::uint8_t>(slot)}; }
  static constexpr Action effect_target(std::uint8_t ref) { return {ActionKind::EffectTarget, ref}; }
  static constexpr Action choose_defender(std::uint8_t ref) { return {ActionKind::ChooseDefender, ref}; }
  static constexpr Action discover(int option) { return {ActionKind::Discover, static_cast<std::uint8_t>(option)}; }

  constexpr std::uint16_t ordinal() const {
    return static_cast<std::uint16_t>((static_cast<unsigned>(kind) << 8) | arg);
  }
  static constexpr Action from_ordinal(std::uint16_t ord) {
    return {static_cast<ActionKind>(ord >> 8), static_cast<std::uint8_t>(ord & 0xff)};
  }

  friend constexpr bool operator==(Action a, Action b) { return a.kind == b.kind && a.arg == b.arg; }
  friend constexpr bool operator<(Action a, Action b) { return a.ordinal() < b.ordinal(); }
};

std::string to_string(Action a);
// Parses the to_string form ("PlayCard(2)", "EndTurn", ...).
std::optional<Action> parse_action(const std::string& text);

// Small fixed-capacity list; legal move lists never exceed 32 entries.
template <typename T, std::size_t N>
class StaticVector {
 public:
  using value_type = T;

  constexpr void push_back(const T& v) { data_[size_++] = v; }
  constexpr void pop_back() { --size_; }
  constexpr void clear() { size_ = 0; }
  constexpr std::size_t size() const { return size_; }
  constexpr bool empty() const { return size_ == 0; }
  static constexpr std::size_t capacity() { return N; }
  constexpr T& operator[](std::size_t i) { return data_[i]; }
  constexpr const T& operator[](std::size_t i) const { return data_[i]; }
  constexpr T* begin() { return data_.data(); }
  constexpr T* end() { return data_.data() + size_; }
  constexpr const T* begin() const { return data_.data(); }
  constexpr const T* end() const { return data_.data() + size_; }
  constexpr T& back() { return data_[size_ - 1]; }
  constexpr const T& back() const { return data_[size_ - 1]; }

  constexpr void erase_at(std::size_t i) {
    for (std::size_t k = i + 1; k < size_; ++k) data_[k - 1] = data_[k];
    --size_;
  }
  constexpr void insert_at(std::size_t i, const T& v) {
    for (std::size_t k = size_; k > i; --k) data_[k] = data_[k - 1];
    data_[i] = v;
    ++size_;
  }

  friend constexpr bool operator==(const StaticVector& a, const StaticVector& b) {
    if (a.size_ != b.size_) return false;
    for (std::size_t i = 0; i < a.size_; ++i) {
      if (!(a.data_[i] == b.data_[i])) return false;
    }
    return true;
  }

 private:
  std::array<T, N> data_{};
  std::size_t size_ = 0;
};

using MoveList = StaticVector<Action, 32>;

}  // namespace miniccg

template <>
struct std::hash<miniccg::Action> {
  std::size_t operator()(miniccg::Action a) const noexcept { return a.ordinal(); }
};
