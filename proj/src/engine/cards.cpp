#include "miniccg/engine/cards.h"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "miniccg/engine/errors.h"

namespace miniccg {

namespace {

using nlohmann::json;

constexpr std::pair<std::string_view, CardKind> kKinds[] = {
    {"minion", CardKind::Minion},
    {"spell", CardKind::Spell},
    {"hero_power", CardKind::HeroPower},
    {"coin", CardKind::Coin},
};

constexpr std::pair<std::string_view, Effect> kEffects[] = {
    {"none", Effect::None},
    {"battlecry_damage", Effect::BattlecryDamage},
    {"battlecry_random_damage", Effect::BattlecryRandomDamage},
    {"deathrattle_draw", Effect::DeathrattleDraw},
    {"spell_damage", Effect::SpellDamage},
    {"spell_aoe", Effect::SpellAoe},
    {"spell_draw", Effect::SpellDraw},
    {"spell_buff", Effect::SpellBuff},
    {"spell_discover", Effect::SpellDiscover},
    {"coin", Effect::Coin},
    {"hero_ping", Effect::HeroPing},
    {"hero_tap", Effect::HeroTap},
};

template <typename E, std::size_t N>
E lookup(const std::pair<std::string_view, E> (&table)[N], const std::string& key,
         const std::string& what) {
  for (const auto& [name, value] : table) {
    if (name == key) return value;
  }
  throw ConfigError("card pool: unknown " + what + " '" + key + "'");
}

template <typename T>
T field(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ConfigError(where + ": missing field '" + key + "'");
  try {
    return it->get<T>();
  } catch (const json::exception&) {
    throw ConfigError(where + ": field '" + key + "' has the wrong type");
  }
}

const std::set<std::string> kCardKeys = {"id",       "name",   "kind",   "cost",        "attack", "health",
                                         "keywords", "effect", "amount", "collectible", "text"};
const std::set<std::string> kTopKeys = {"format", "version", "coin", "hero_powers", "cards", "decks"};

}  // namespace

TargetRule target_rule(Effect effect) {
  switch (effect) {
    case Effect::BattlecryDamage: return TargetRule::AnyOtherCharacter;
    case Effect::SpellDamage:
    case Effect::HeroPing: return TargetRule::AnyCharacter;
    case Effect::SpellBuff: return TargetRule::FriendlyMinion;
    default: return TargetRule::None;
  }
}

CardPool CardPool::from_json(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("card pool: malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("card pool: top level must be an object");
  for (const auto& [key, _] : doc.items()) {
    if (!kTopKeys.count(key)) throw ConfigError("card pool: unknown key '" + key + "'");
  }

  CardPool pool;
  const auto& cards = doc.at("cards");
  if (!cards.is_array() || cards.empty() || cards.size() > kMaxCards) {
    throw ConfigError("card pool: 'cards' must be a non-empty array of at most 64 cards");
  }
  pool.cards_.resize(cards.size());
  std::vector<bool> seen(cards.size(), false);
  for (const auto& c : cards) {
    for (const auto& [key, _] : c.items()) {
      if (!kCardKeys.count(key)) throw ConfigError("card pool: unknown card key '" + key + "'");
    }
    int id = field<int>(c, "id", "card");
    std::string where = "card " + std::to_string(id);
    if (id < 0 || id >= static_cast<int>(cards.size()) || seen[id]) {
      throw ConfigError(where + ": ids must be dense and unique");
    }
    seen[id] = true;
    CardDef def;
    def.id = static_cast<CardId>(id);
    def.name = field<std::string>(c, "name", where);
    def.kind = lookup(kKinds, field<std::string>(c, "kind", where), "kind");
    def.cost = field<int>(c, "cost", where);
    def.attack = field<int>(c, "attack", where);
    def.health = field<int>(c, "health", where);
    for (const auto& kw : field<std::vector<std::string>>(c, "keywords", where)) {
      if (kw == "taunt") {
        def.taunt = true;
      } else if (kw == "charge") {
        def.charge = true;
      } else {
        throw ConfigError(where + ": unknown keyword '" + kw + "'");
      }
    }
    def.effect = lookup(kEffects, field<std::string>(c, "effect", where), "effect");
    def.amount = field<int>(c, "amount", where);
    def.collectible = field<bool>(c, "collectible", where);
    def.text = field<std::vector<std::string>>(c, "text", where);

    if (def.cost < 0 || def.cost > 10) throw ConfigError(where + ": cost must be in 0..10");
    if (def.kind == CardKind::Minion) {
      if (def.attack < 0 || def.health < 1) throw ConfigError(where + ": minions need attack >= 0, health >= 1");
    } else if (def.attack != 0 || def.health != 0) {
      throw ConfigError(where + ": non-minions must have attack = health = 0");
    }
    if (def.amount < 0 || def.amount > 100) throw ConfigError(where + ": amount out of range");
    pool.cards_[id] = std::move(def);
  }

  for (const auto& def : pool.cards_) {
    CardStats& s = pool.stats_[def.id];
    s.cost = static_cast<std::int8_t>(def.cost);
    s.attack = static_cast<std::int8_t>(def.attack);
    s.health = static_cast<std::int8_t>(def.health);
    s.amount = static_cast<std::int8_t>(def.amount);
    s.kind = def.kind;
    s.effect = def.effect;
    s.taunt = def.taunt;
    s.charge = def.charge;
    s.collectible = def.collectible;
    if (def.collectible && def.kind == CardKind::Spell && def.effect != Effect::SpellDiscover) {
      pool.discover_pool_.push_back(def.id);
    }
  }

  int coin = field<int>(doc, "coin", "card pool");
  if (!pool.contains(coin) || pool.cards_[coin].kind != CardKind::Coin) {
    throw ConfigError("card pool: 'coin' must name a coin card");
  }
  pool.coin_ = static_cast<CardId>(coin);
  auto powers = field<std::vector<int>>(doc, "hero_powers", "card pool");
  if (powers.size() != 2) throw ConfigError("card pool: 'hero_powers' needs exactly two ids");
  for (int seat = 0; seat < 2; ++seat) {
    if (!pool.contains(powers[seat]) || pool.cards_[powers[seat]].kind != CardKind::HeroPower) {
      throw ConfigError("card pool: 'hero_powers' must name hero power cards");
    }
    pool.hero_powers_[seat] = static_cast<CardId>(powers[seat]);
  }
  if (pool.discover_pool_.size() < 3) {
    throw ConfigError("card pool: Discover needs at least three collectible spells");
  }

  if (doc.contains("decks")) {
    for (const auto& [name, ids] : doc.at("decks").items()) {
      DeckList deck;
      for (int id : ids.get<std::vector<int>>()) {
        if (!pool.contains(id)) throw ConfigError("deck '" + name + "': unknown card id " + std::to_string(id));
        deck.push_back(static_cast<CardId>(id));
      }
      pool.validate_deck(deck);
      pool.decks_[name] = std::move(deck);
    }
  }
  return pool;
}

CardPool CardPool::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("card pool: cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json(ss.str());
}

const DeckList& CardPool::deck(const std::string& name) const {
  auto it = decks_.find(name);
  if (it == decks_.end()) throw ConfigError("unknown deck '" + name + "'");
  return it->second;
}

void CardPool::validate_deck(const DeckList& deck) const {
  if (deck.size() != kDeckSize) {
    throw ConfigError("deck must have exactly 30 cards, got " + std::to_string(deck.size()));
  }
  for (CardId id : deck) {
    if (!contains(id)) throw ConfigError("deck contains unknown card id " + std::to_string(id));
    if (!stats_[id].collectible) throw ConfigError("deck contains non-collectible card " + cards_[id].name);
  }
}

std::string_view to_string(CardKind kind) {
  for (const auto& [name, value] : kKinds) {
    if (value == kind) return name;
  }
  return "?";
}

std::string_view to_string(Effect effect) {
  for (const auto& [name, value] : kEffects) {
    if (value == effect) return name;
  }
  return "?";
}

}  // namespace miniccg
