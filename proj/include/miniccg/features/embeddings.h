#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "miniccg/engine/cards.h"

namespace miniccg {

struct SkipGramOptions {
  int dim = 10;
  int context = 10;   // window radius in tokens
  int epochs = 300;
  double lr = 0.1;
  int decay_every = 100;  // lr *= decay_factor every this many epochs
  double decay_factor = 0.1;
  int negatives = 5;
  std::uint64_t seed = 1;
};

class EmbeddingTable {
 public:
  EmbeddingTable() = default;
  EmbeddingTable(int dim, int card_count) : dim_(dim), vectors_(std::size_t(dim) * card_count) {}

  int dim() const { return dim_; }
  int card_count() const { return dim_ == 0 ? 0 : static_cast<int>(vectors_.size() / dim_); }
  std::span<const float> vector(CardId id) const { return {vectors_.data() + std::size_t(id) * dim_, std::size_t(dim_)}; }
  std::span<float> vector(CardId id) { return {vectors_.data() + std::size_t(id) * dim_, std::size_t(dim_)}; }
  const std::vector<float>& data() const { return vectors_; }
  std::map<std::string, int>& vocab() { return vocab_; }
  const std::map<std::string, int>& vocab() const { return vocab_; }

  friend bool operator==(const EmbeddingTable&, const EmbeddingTable&) = default;

 private:
  int dim_ = 0;
  std::vector<float> vectors_;  // card_count x dim
  std::map<std::string, int> vocab_;
};

// One sentence per card: its own token ("card:<id>") followed by its text.
std::vector<std::vector<std::string>> card_corpus(const CardPool& pool);

// Skip-gram with negative sampling over the card corpus, plain SGD with one
// update per (center, context) pair. A card's vector is the input vector of
// its card token scaled to unit length, so every entry is in [-1, 1].
// Deterministic given the seed. Throws ConfigError on an empty corpus.
EmbeddingTable train_embeddings(const std::vector<std::vector<std::string>>& corpus, int card_count,
                                const SkipGramOptions& options);
EmbeddingTable train_embeddings(const CardPool& pool, const SkipGramOptions& options = {});

double cosine_similarity(std::span<const float> a, std::span<const float> b);

}  // namespace miniccg
