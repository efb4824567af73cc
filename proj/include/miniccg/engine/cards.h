#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace miniccg {

using CardId = std::uint8_t;

inline constexpr int kMaxCards = 64;
inline constexpr int kDeckSize = 30;

enum class CardKind : std::uint8_t { Minion, Spell, HeroPower, Coin };

// Scripted card effects. `amount` on the CardDef parameterises each one.
enum class Effect : std::uint8_t {
  None,
  BattlecryDamage,        // targeted: deal amount to any other character
  BattlecryRandomDamage,  // deal 1..amount to a random enemy character
  DeathrattleDraw,        // owner draws amount cards
  SpellDamage,            // targeted: deal amount to any character
  SpellAoe,               // deal amount to every minion
  SpellDraw,              // draw amount cards
  SpellBuff,              // targeted friendly minion gets +amount/+amount
  SpellDiscover,          // choose 1 of amount random collectible spells
  Coin,                   // +amount mana this turn
  HeroPing,               // targeted: deal amount to any character
  HeroTap,                // draw a card, own hero takes amount damage
};

struct CardDef {
  CardId id = 0;
  std::string name;
  CardKind kind = CardKind::Minion;
  int cost = 0;
  int attack = 0;
  int health = 0;
  bool taunt = false;
  bool charge = false;
  Effect effect = Effect::None;
  int amount = 0;
  bool collectible = true;
  std::vector<std::string> text;
};

// Whether playing the card needs an EffectTarget step, and which targets
// are allowed.
enum class TargetRule : std::uint8_t { None, AnyCharacter, AnyOtherCharacter, FriendlyMinion };

TargetRule target_rule(Effect effect);

// Packed per-card data used by the rules hot path.
struct CardStats {
  std::int8_t cost = 0;
  std::int8_t attack = 0;
  std::int8_t health = 0;
  std::int8_t amount = 0;
  CardKind kind = CardKind::Minion;
  Effect effect = Effect::None;
  bool taunt = false;
  bool charge = false;
  bool collectible = false;
};

using DeckList = std::vector<CardId>;

// Immutable card pool plus the named decklists shipped with it.
class CardPool {
 public:
  static CardPool from_json(std::string_view json_text);
  static CardPool from_file(const std::string& path);
  // The pool compiled in from data/miniccg_cards.json.
  static const CardPool& builtin();

  int size() const { return static_cast<int>(cards_.size()); }
  const CardDef& card(CardId id) const { return cards_[id]; }
  const std::vector<CardDef>& cards() const { return cards_; }
  const CardStats& stats(CardId id) const { return stats_[id]; }
  bool contains(int id) const { return id >= 0 && id < size(); }

  CardId coin() const { return coin_; }
  CardId hero_power(int seat) const { return hero_powers_[seat]; }
  // Collectible spells other than Discover cards; the Discover option pool.
  const std::vector<CardId>& discover_pool() const { return discover_pool_; }

  const DeckList& deck(const std::string& name) const;
  const std::map<std::string, DeckList>& decks() const { return decks_; }

  // Throws ConfigError unless the deck has 30 collectible ids from the pool.
  void validate_deck(const DeckList& deck) const;

 private:
  std::vector<CardDef> cards_;
  std::array<CardStats, kMaxCards> stats_{};
  CardId coin_ = 0;
  std::array<CardId, 2> hero_powers_{};
  std::vector<CardId> discover_pool_;
  std::map<std::string, DeckList> decks_;
};

std::string_view to_string(CardKind kind);
std::string_view to_string(Effect effect);

}  // namespace miniccg
