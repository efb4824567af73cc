#include "miniccg/features/embeddings.h"

#include <algorithm>
#include <cmath>

#include "miniccg/engine/errors.h"
#include "miniccg/engine/rng.h"

namespace miniccg {

namespace {

std::string card_token(int id) { return "card:" + std::to_string(id); }

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

struct Pair {
  int center;
  int context;
};

}  // namespace

std::vector<std::vector<std::string>> card_corpus(const CardPool& pool) {
  std::vector<std::vector<std::string>> corpus;
  for (const CardDef& c : pool.cards()) {
    std::vector<std::string> sentence{card_token(c.id)};
    sentence.insert(sentence.end(), c.text.begin(), c.text.end());
    corpus.push_back(std::move(sentence));
  }
  return corpus;
}

EmbeddingTable train_embeddings(const std::vector<std::vector<std::string>>& corpus, int card_count,
                                const SkipGramOptions& o) {
  if (corpus.empty()) throw ConfigError("train_embeddings: empty corpus");
  if (o.dim < 1 || o.epochs < 0 || o.negatives < 0 || o.context < 1) {
    throw ConfigError("train_embeddings: bad options");
  }

  EmbeddingTable table(o.dim, card_count);
  auto& vocab = table.vocab();
  for (const auto& sentence : corpus) {
    for (const auto& tok : sentence) vocab.emplace(tok, 0);
  }
  {
    int next = 0;
    for (auto& [tok, idx] : vocab) idx = next++;
  }
  const int v = static_cast<int>(vocab.size());

  std::vector<double> counts(v, 0.0);
  std::vector<Pair> pairs;
  for (const auto& sentence : corpus) {
    std::vector<int> s;
    for (const auto& tok : sentence) {
      s.push_back(vocab.at(tok));
      counts[s.back()] += 1.0;
    }
    for (int i = 0; i < static_cast<int>(s.size()); ++i) {
      int lo = std::max(0, i - o.context);
      int hi = std::min<int>(static_cast<int>(s.size()) - 1, i + o.context);
      for (int j = lo; j <= hi; ++j) {
        if (j != i) pairs.push_back({s[i], s[j]});
      }
    }
  }

  // Negative sampling distribution: unigram counts to the 3/4 power.
  std::vector<double> cdf(v);
  double total = 0.0;
  for (int i = 0; i < v; ++i) {
    total += std::pow(counts[i], 0.75);
    cdf[i] = total;
  }
  for (double& c : cdf) c /= total;

  Rng rng(o.seed);
  const int d = o.dim;
  std::vector<double> in(std::size_t(v) * d), out(std::size_t(v) * d, 0.0);
  for (double& x : in) x = (rng.uniform() - 0.5) / d;

  auto draw_negative = [&] {
    double u = rng.uniform();
    return static_cast<int>(std::lower_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
  };
  double lr = o.lr;
  auto update = [&](int c, int t, double label) {
    double* u = &in[std::size_t(c) * d];
    double* w = &out[std::size_t(t) * d];
    double dot = 0.0;
    for (int k = 0; k < d; ++k) dot += u[k] * w[k];
    double g = (sigmoid(dot) - label) * lr;
    for (int k = 0; k < d; ++k) {
      double uk = u[k];
      u[k] -= g * w[k];
      w[k] -= g * uk;
    }
  };

  for (int epoch = 0; epoch < o.epochs; ++epoch) {
    if (epoch > 0 && o.decay_every > 0 && epoch % o.decay_every == 0) lr *= o.decay_factor;
    rng.shuffle(pairs.data(), static_cast<std::uint32_t>(pairs.size()));
    for (const Pair& p : pairs) {
      update(p.center, p.context, 1.0);
      for (int n = 0; n < o.negatives; ++n) {
        int neg = draw_negative();
        if (neg != p.context) update(p.center, neg, 0.0);
      }
    }
  }

  for (int id = 0; id < card_count; ++id) {
    auto it = vocab.find(card_token(id));
    auto dst = table.vector(static_cast<CardId>(id));
    if (it == vocab.end()) continue;
    const double* src = &in[std::size_t(it->second) * d];
    double norm = 0.0;
    for (int k = 0; k < d; ++k) norm += src[k] * src[k];
    norm = std::sqrt(norm);
    for (int k = 0; k < d; ++k) {
      dst[k] = static_cast<float>(std::clamp(norm > 0.0 ? src[k] / norm : 0.0, -1.0, 1.0));
    }
  }
  return table;
}

EmbeddingTable train_embeddings(const CardPool& pool, const SkipGramOptions& options) {
  return train_embeddings(card_corpus(pool), pool.size(), options);
}

double cosine_similarity(std::span<const float> a, std::span<const float> b) {
  double ab = 0, aa = 0, bb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ab += double(a[i]) * b[i];
    aa += double(a[i]) * a[i];
    bb += double(b[i]) * b[i];
  }
  if (aa == 0 || bb == 0) return 0.0;
  return ab / std::sqrt(aa * bb);
}

}  // namespace miniccg
