#include <algorithm>
#include <span>

#include <gtest/gtest.h>

#include "miniccg/engine/errors.h"
#include "miniccg/features/embeddings.h"
#include "miniccg/features/vectorizer.h"
#include "support.h"

namespace miniccg {
namespace {

using namespace testing;

const EmbeddingTable& trained() {
  static const EmbeddingTable table = train_embeddings(CardPool::builtin());
  return table;
}

std::span<const float> seg(const std::vector<float>& v, const FeatureLayout& layout, const std::string& name) {
  const LayoutSegment& s = layout.segment(name);
  return std::span<const float>(v).subspan(static_cast<std::size_t>(s.offset), static_cast<std::size_t>(s.size));
}

bool same(std::span<const float> a, std::span<const float> b) { return std::equal(a.begin(), a.end(), b.begin(), b.end()); }

TEST(Layout, StandardSchema) {
  FeatureLayout layout = FeatureLayout::standard();
  EXPECT_EQ(layout.total_dim, 2 + 2 * 6 + 14 * 17 + 10 * 12);
  EXPECT_EQ(layout.total_dim, 372);
  int offset = 0;
  for (const LayoutSegment& s : layout.segments) {
    EXPECT_EQ(s.offset, offset) << s.name;
    offset += s.size;
  }
  EXPECT_EQ(offset, layout.total_dim);
  EXPECT_EQ(layout.segment("hand").size, 120);
  EXPECT_EQ(layout.version(), "miniccg-layout-1/emb10/dim372");
  EXPECT_NE(FeatureLayout::standard(8).version(), layout.version());
  EXPECT_THROW(layout.segment("graveyard"), ContractViolation);
}

TEST(Vectorize, LengthAndRange) {
  FeatureLayout layout = FeatureLayout::standard();
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    GameState s = random_walk(fresh(seed), static_cast<int>(seed % 250), seed);
    for (int p = 0; p < 2; ++p) {
      std::vector<float> v = vectorize(s, p, layout, trained());
      ASSERT_EQ(v.size(), 372u);
      for (float x : v) {
        ASSERT_GE(x, -1.0f);
        ASSERT_LE(x, 1.0f);
      }
    }
  }
}

TEST(Vectorize, EmptySlotsAreZero) {
  FeatureLayout layout = FeatureLayout::standard();
  GameState s = blank();
  std::vector<float> v = vectorize(s, 0, layout, trained());
  for (const char* name : {"self_board", "opponent_board", "hand"}) {
    auto block = seg(v, layout, name);
    EXPECT_TRUE(std::all_of(block.begin(), block.end(), [](float x) { return x == 0.0f; })) << name;
  }
  auto self = seg(v, layout, "self");
  EXPECT_FLOAT_EQ(self[0], 1.0f);  // 30/30 HP
  EXPECT_FLOAT_EQ(self[1], 1.0f);  // 10/10 mana
}

TEST(Vectorize, SlotEncoding) {
  FeatureLayout layout = FeatureLayout::standard();
  GameState s = blank();
  s.players[0].board.push_back(minion(card::kTaunt, 6, 3, true, true));
  s.players[0].hand.push_back({card::kFirebolt, false});
  std::vector<float> v = vectorize(s, 0, layout, trained());
  auto slot = seg(v, layout, "self_board").subspan(0, 17);
  EXPECT_EQ(slot[0], 1.0f);
  EXPECT_FLOAT_EQ(slot[1], 0.5f);
  EXPECT_FLOAT_EQ(slot[2], 0.25f);
  EXPECT_FLOAT_EQ(slot[3], 0.25f);
  EXPECT_EQ(slot[4], 1.0f);
  EXPECT_EQ(slot[5], 1.0f);
  EXPECT_EQ(slot[6], 0.0f);
  EXPECT_TRUE(same(slot.subspan(7), trained().vector(card::kTaunt)));
  auto hand = seg(v, layout, "hand").subspan(0, 12);
  EXPECT_EQ(hand[0], 1.0f);
  EXPECT_FLOAT_EQ(hand[1], 0.1f);
  EXPECT_TRUE(same(hand.subspan(2), trained().vector(card::kFirebolt)));
}

TEST(Vectorize, Pure) {
  FeatureLayout layout = FeatureLayout::standard();
  GameState s = random_walk(fresh(6), 70, 6);
  GameState copy = s;
  EXPECT_EQ(vectorize(s, 0, layout, trained()), vectorize(s, 0, layout, trained()));
  EXPECT_EQ(s, copy);
}

TEST(Vectorize, PerspectiveSwapsPlayerSegments) {
  FeatureLayout layout = FeatureLayout::standard();
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    GameState s = random_walk(fresh(seed), static_cast<int>(seed % 200), seed + 1);
    std::vector<float> a = vectorize(s, 0, layout, trained());
    std::vector<float> b = vectorize(s, 1, layout, trained());
    EXPECT_TRUE(same(seg(a, layout, "self"), seg(b, layout, "opponent")));
    EXPECT_TRUE(same(seg(a, layout, "opponent"), seg(b, layout, "self")));
    EXPECT_TRUE(same(seg(a, layout, "self_board"), seg(b, layout, "opponent_board")));
    EXPECT_TRUE(same(seg(a, layout, "opponent_board"), seg(b, layout, "self_board")));
    auto ga = seg(a, layout, "global"), gb = seg(b, layout, "global");
    EXPECT_EQ(ga[0], gb[0]);
    EXPECT_EQ(ga[1] + gb[1], 1.0f);
  }
}

TEST(Vectorize, OpponentHandNeverLeaks) {
  FeatureLayout layout = FeatureLayout::standard();
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    GameState a = random_walk(fresh(seed), 40, seed);
    GameState b = a;
    for (HandCard& c : b.players[1].hand) c.card = card::kSpellbook;
    std::reverse(b.players[1].deck.begin(), b.players[1].deck.begin() + b.players[1].deck_size);
    EXPECT_EQ(vectorize(a, 0, layout, trained()), vectorize(b, 0, layout, trained()));
  }
}

TEST(Vectorize, RejectsMismatchedEmbeddings) {
  FeatureLayout layout = FeatureLayout::standard();
  EmbeddingTable wrong(8, CardPool::builtin().size());
  EXPECT_THROW(vectorize(fresh(1), 0, layout, wrong), ContractViolation);
  std::vector<float> small(100);
  EXPECT_THROW(vectorize(fresh(1), 0, layout, trained(), small), ContractViolation);
}

TEST(Embeddings, ShapeAndRange) {
  const EmbeddingTable& t = trained();
  EXPECT_EQ(t.dim(), 10);
  EXPECT_EQ(t.card_count(), CardPool::builtin().size());
  for (float x : t.data()) {
    EXPECT_GE(x, -1.0f);
    EXPECT_LE(x, 1.0f);
  }
  EXPECT_TRUE(t.vocab().count("minion"));
  EXPECT_TRUE(t.vocab().count("card:27"));
}

TEST(Embeddings, CorpusHasOneSentencePerCard) {
  auto corpus = card_corpus(CardPool::builtin());
  ASSERT_EQ(corpus.size(), 40u);
  EXPECT_EQ(corpus[27].front(), "card:27");
  EXPECT_EQ(std::vector<std::string>(corpus[27].begin() + 1, corpus[27].end()),
            CardPool::builtin().card(27).text);
}

TEST(Embeddings, IdenticalTextMeansNearlyIdenticalVectors) {
  const EmbeddingTable& t = trained();
  const CardPool& pool = CardPool::builtin();
  int pairs = 0;
  for (const CardDef& a : pool.cards()) {
    for (const CardDef& b : pool.cards()) {
      if (a.id >= b.id) continue;
      double cos = cosine_similarity(t.vector(a.id), t.vector(b.id));
      if (a.text == b.text) {
        EXPECT_GE(cos, 0.99) << a.name << " / " << b.name;
        ++pairs;
      } else {
        EXPECT_LT(cos, 0.99) << a.name << " / " << b.name;
      }
    }
  }
  EXPECT_GT(pairs, 50);
  EXPECT_LT(cosine_similarity(t.vector(card::kFirebolt), t.vector(card::kVanilla12)), 0.5);
}

TEST(Embeddings, Deterministic) {
  SkipGramOptions opt;
  opt.epochs = 20;
  EmbeddingTable a = train_embeddings(CardPool::builtin(), opt);
  EmbeddingTable b = train_embeddings(CardPool::builtin(), opt);
  EXPECT_EQ(a, b);
  opt.seed = 2;
  EXPECT_NE(train_embeddings(CardPool::builtin(), opt), a);
}

TEST(Embeddings, EmptyCorpusIsAConfigError) {
  EXPECT_THROW(train_embeddings({}, 0, SkipGramOptions{}), ConfigError);
}

TEST(Embeddings, Cosine) {
  std::vector<float> a{1, 0}, b{0, 2}, c{3, 0};
  EXPECT_DOUBLE_EQ(cosine_similarity(a, b), 0.0);
  EXPECT_DOUBLE_EQ(cosine_similarity(a, c), 1.0);
}

}  // namespace
}  // namespace miniccg
