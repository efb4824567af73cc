#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "miniccg/neural/mlp.h"

namespace miniccg {

using Net = Mlp<float>;

// input -> 256 tanh -> 128 tanh -> 64 tanh -> 2 softmax.
Net make_value_network(int input_dim, std::uint64_t seed);

// Two-way win probabilities for a feature vector.
std::array<float, 2> predict(const Net& net, std::span<const float> features);

struct LabeledSet {
  int dim = 0;
  std::vector<float> features;  // n x dim
  std::vector<float> targets;   // n x 2
  std::size_t size() const { return dim == 0 ? 0 : features.size() / dim; }
  void add(std::span<const float> x, std::array<float, 2> y);
};

struct TrainOptions {
  double split = 0.8;
  std::size_t batch = 256;
  int epochs = 10;
  double lr = 0.001;
  std::uint64_t seed = 1;
  // Architecture override for tests; empty means the standard value net.
  std::vector<int> hidden;
};

struct TrainReport {
  Net net;
  double validation_accuracy = 0.0;
  std::size_t validation_counted = 0;  // non-draw validation samples
  std::size_t train_size = 0;
  std::vector<double> epoch_loss;      // mean training loss per epoch
};

// Fresh initialisation, shuffled split, Adam on mini-batches (the last
// partial batch is kept). Accuracy is the argmax match rate on the held-out
// part, draws excluded. Throws ConfigError on an empty dataset.
TrainReport train_epochs(const LabeledSet& data, const TrainOptions& options);

// Argmax accuracy of `net` on `data`, draws excluded.
double accuracy(const Net& net, const LabeledSet& data, std::size_t* counted = nullptr);

}  // namespace miniccg
