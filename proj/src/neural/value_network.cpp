#include "miniccg/neural/value_network.h"

#include <numeric>

#include "miniccg/engine/errors.h"
#include "miniccg/neural/adam.h"

namespace miniccg {

Net make_value_network(int input_dim, std::uint64_t seed) {
  Net net({input_dim, 256, 128, 64, 2},
          {Activation::Tanh, Activation::Tanh, Activation::Tanh, Activation::Softmax});
  net.init_glorot(seed);
  return net;
}

std::array<float, 2> predict(const Net& net, std::span<const float> features) {
  std::array<float, 2> out{};
  net.forward(features, out);
  return out;
}

void LabeledSet::add(std::span<const float> x, std::array<float, 2> y) {
  if (dim == 0) dim = static_cast<int>(x.size());
  if (static_cast<int>(x.size()) != dim) throw ContractViolation("LabeledSet: feature dimension mismatch");
  features.insert(features.end(), x.begin(), x.end());
  targets.push_back(y[0]);
  targets.push_back(y[1]);
}

namespace {

bool is_draw(const float* y) { return y[0] == y[1]; }

double accuracy_on(const Net& net, const LabeledSet& data, const std::vector<std::size_t>& idx,
                   std::size_t* counted) {
  std::size_t hits = 0, n = 0;
  for (std::size_t i : idx) {
    const float* y = &data.targets[2 * i];
    if (is_draw(y)) continue;
    auto p = predict(net, std::span<const float>(&data.features[i * data.dim], data.dim));
    ++n;
    if ((p[0] >= p[1]) == (y[0] > y[1])) ++hits;
  }
  if (counted) *counted = n;
  return n == 0 ? 0.0 : static_cast<double>(hits) / static_cast<double>(n);
}

}  // namespace

double accuracy(const Net& net, const LabeledSet& data, std::size_t* counted) {
  std::vector<std::size_t> idx(data.size());
  std::iota(idx.begin(), idx.end(), 0);
  return accuracy_on(net, data, idx, counted);
}

TrainReport train_epochs(const LabeledSet& data, const TrainOptions& options) {
  const std::size_t n = data.size();
  if (n == 0) throw ConfigError("train_epochs: empty dataset");
  if (options.batch == 0 || options.epochs < 0 || !(options.split > 0.0 && options.split <= 1.0)) {
    throw ConfigError("train_epochs: invalid options");
  }
  Rng rng(options.seed);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  rng.shuffle(order.data(), static_cast<std::uint32_t>(n));
  std::size_t n_train = static_cast<std::size_t>(options.split * static_cast<double>(n));
  n_train = std::clamp<std::size_t>(n_train, 1, n);
  std::vector<std::size_t> train(order.begin(), order.begin() + n_train);
  std::vector<std::size_t> valid(order.begin() + n_train, order.end());

  TrainReport report;
  if (options.hidden.empty()) {
    report.net = make_value_network(data.dim, derive_seed(options.seed, 1));
  } else {
    std::vector<int> dims{data.dim};
    std::vector<Activation> acts;
    for (int h : options.hidden) {
      dims.push_back(h);
      acts.push_back(Activation::Tanh);
    }
    dims.push_back(2);
    acts.push_back(Activation::Softmax);
    report.net = Net(dims, acts);
    report.net.init_glorot(derive_seed(options.seed, 1));
  }
  report.train_size = n_train;

  Adam<float> adam(AdamConfig{options.lr});
  std::vector<LayerGrad<float>> grads;
  std::vector<float> xb, yb;
  for (int epoch = 0; epoch < options.epochs; ++epoch) {
    rng.shuffle(train.data(), static_cast<std::uint32_t>(train.size()));
    double loss_sum = 0.0;
    for (std::size_t start = 0; start < train.size(); start += options.batch) {
      std::size_t end = std::min(train.size(), start + options.batch);
      std::size_t b = end - start;
      xb.resize(b * data.dim);
      yb.resize(b * 2);
      for (std::size_t k = 0; k < b; ++k) {
        std::size_t i = train[start + k];
        std::copy_n(&data.features[i * data.dim], data.dim, &xb[k * data.dim]);
        yb[2 * k] = data.targets[2 * i];
        yb[2 * k + 1] = data.targets[2 * i + 1];
      }
      float loss = report.net.forward_backward(xb, yb, b, grads);
      loss_sum += static_cast<double>(loss) * static_cast<double>(b);
      adam.step(report.net, grads);
    }
    report.epoch_loss.push_back(loss_sum / static_cast<double>(train.size()));
  }
  report.validation_accuracy = accuracy_on(report.net, data, valid, &report.validation_counted);
  return report;
}

}  // namespace miniccg
