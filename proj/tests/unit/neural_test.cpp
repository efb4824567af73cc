#include <cmath>
#include <cstring>
#include <filesystem>
#include <numeric>

#include <gtest/gtest.h>

#include "miniccg/engine/errors.h"
#include "miniccg/engine/rng.h"
#include "miniccg/neural/adam.h"
#include "miniccg/neural/model_io.h"
#include "miniccg/neural/value_network.h"
#include "oracles.h"

namespace miniccg {
namespace {

using namespace testing;

TEST(Forward, ZeroWeightsGiveEvenOdds) {
  Net net = make_value_network(372, 1);
  for (auto& l : net.layers()) {
    std::fill(l.weights.begin(), l.weights.end(), 0.0f);
    std::fill(l.biases.begin(), l.biases.end(), 0.0f);
  }
  net.sync();
  std::vector<float> x(372, 0.3f);
  auto p = predict(net, x);
  EXPECT_EQ(p[0], 0.5f);
  EXPECT_EQ(p[1], 0.5f);
}

TEST(Forward, StandardArchitecture) {
  Net net = make_value_network(372, 1);
  ASSERT_EQ(net.layers().size(), 4u);
  const int outs[] = {256, 128, 64, 2};
  for (int i = 0; i < 4; ++i) {
    EXPECT_EQ(net.layers()[i].out, outs[i]);
    EXPECT_EQ(net.layers()[i].activation, i < 3 ? Activation::Tanh : Activation::Softmax);
  }
  EXPECT_EQ(net.input_dim(), 372);
}

TEST(Forward, SoftmaxSumsToOne) {
  Rng rng(5);
  Net net = make_value_network(40, 2);
  std::vector<float> x(40);
  for (int i = 0; i < 20000; ++i) {
    for (float& v : x) v = static_cast<float>(rng.uniform() * 2 - 1);
    auto p = predict(net, x);
    ASSERT_NEAR(p[0] + p[1], 1.0, 1e-6);
    ASSERT_GE(p[0], 0.0f);
    ASSERT_GE(p[1], 0.0f);
  }
}

TEST(Forward, HandComputedTinyNet) {
  Mlp<double> net({1, 2, 2}, {Activation::Tanh, Activation::Softmax});
  net.layers()[0].weights = {0.5, -1.0};
  net.layers()[0].biases = {0.1, 0.2};
  net.layers()[1].weights = {1.0, 2.0, -1.0, 0.5};
  net.layers()[1].biases = {0.0, 0.3};
  net.sync();
  const double x = 0.7;
  const double h1 = std::tanh(0.5 * x + 0.1), h2 = std::tanh(-1.0 * x + 0.2);
  const double z1 = 1.0 * h1 + 2.0 * h2 + 0.0, z2 = -1.0 * h1 + 0.5 * h2 + 0.3;
  const double p1 = std::exp(z1) / (std::exp(z1) + std::exp(z2));
  std::vector<double> in{x};
  auto out = net.forward(in);
  EXPECT_NEAR(out[0], p1, 1e-9);
  EXPECT_NEAR(out[1], 1.0 - p1, 1e-9);
}

TEST(Forward, DimensionMismatchThrows) {
  Net net = make_value_network(10, 1);
  std::vector<float> x(11);
  EXPECT_THROW(predict(net, x), ContractViolation);
}

TEST(Loss, KnownValues) {
  std::vector<double> half{0.5, 0.5}, win{1.0, 0.0}, draw{0.5, 0.5};
  EXPECT_NEAR(cross_entropy<double>(half, win), std::log(2.0), 1e-15);
  EXPECT_NEAR(cross_entropy<double>(half, win), 0.693147, 1e-6);
  EXPECT_LE(cross_entropy<double>(win, win), 1e-11);
  std::vector<double> zero{0.0, 1.0};
  EXPECT_NEAR(cross_entropy<double>(zero, win), -std::log(1e-12), 1e-9);
  // A draw target is minimised at even odds.
  double at_half = cross_entropy<double>(half, draw);
  for (double p : {0.3, 0.45, 0.55, 0.9}) {
    std::vector<double> q{p, 1 - p};
    EXPECT_GT(cross_entropy<double>(q, draw), at_half);
  }
}

TEST(Backward, MatchesFiniteDifferences) { EXPECT_LT(gradient_check_worst_error(77, 100), 1e-4); }

TEST(Backward, ZeroAtExactFit) {
  Mlp<double> net({3, 4, 2}, {Activation::Tanh, Activation::Softmax});
  net.init_glorot(3);
  std::vector<double> x{0.2, -0.4, 0.9};
  std::vector<double> y = net.forward(x);
  std::vector<LayerGrad<double>> grads;
  net.forward_backward(x, y, 1, grads);
  for (const auto& g : grads) {
    for (double v : g.weights) EXPECT_NEAR(v, 0.0, 1e-15);
    for (double v : g.biases) EXPECT_NEAR(v, 0.0, 1e-15);
  }
}

TEST(Backward, BatchIsAMean) {
  Mlp<double> net({3, 4, 2}, {Activation::Tanh, Activation::Softmax});
  net.init_glorot(4);
  std::vector<double> x{0.2, -0.4, 0.9}, y{1.0, 0.0};
  std::vector<double> x2{0.2, -0.4, 0.9, 0.2, -0.4, 0.9}, y2{1.0, 0.0, 1.0, 0.0};
  std::vector<LayerGrad<double>> one, two;
  double l1 = net.forward_backward(x, y, 1, one);
  double l2 = net.forward_backward(x2, y2, 2, two);
  EXPECT_NEAR(l1, l2, 1e-15);
  for (std::size_t i = 0; i < one.size(); ++i) {
    for (std::size_t k = 0; k < one[i].weights.size(); ++k) EXPECT_NEAR(one[i].weights[k], two[i].weights[k], 1e-15);
  }
}

TEST(Adam, FirstStepClosedForm) {
  std::vector<double> p{1.0, -2.0, 0.5}, g{1.0, 1.0, 1.0};
  Adam<double> adam;
  adam.step({std::span<double>(p)}, {std::span<const double>(g)});
  const double step = 0.001 * 1.0 / (1.0 + 1e-8);
  EXPECT_NEAR(p[0], 1.0 - step, 1e-9);
  EXPECT_NEAR(p[1], -2.0 - step, 1e-9);
  EXPECT_NEAR(p[2], 0.5 - step, 1e-9);
  EXPECT_EQ(adam.steps(), 1);
}

TEST(Adam, ZeroGradientLeavesParameters) {
  std::vector<double> p{1.0, -2.0}, g{0.0, 0.0};
  Adam<double> adam;
  for (int i = 0; i < 10; ++i) adam.step({std::span<double>(p)}, {std::span<const double>(g)});
  EXPECT_EQ(p[0], 1.0);
  EXPECT_EQ(p[1], -2.0);
}

TEST(Adam, ConvergesOnQuadratic) {
  // f(x) = (x - 3)^2, minimum at 3.
  AdamConfig cfg;
  cfg.lr = 0.05;
  Adam<double> adam(cfg);
  std::vector<double> x{1.0}, g{0.0};
  for (int i = 0; i < 1000; ++i) {
    g[0] = 2.0 * (x[0] - 3.0);
    adam.step({std::span<double>(x)}, {std::span<const double>(g)});
  }
  EXPECT_NEAR(x[0], 3.0, 1e-3);
}

TEST(Adam, ShapeMismatchThrows) {
  std::vector<double> p{1.0, 2.0}, g{1.0};
  Adam<double> adam;
  EXPECT_THROW(adam.step({std::span<double>(p)}, {std::span<const double>(g)}), ContractViolation);
}

LabeledSet separable_set(std::size_t n, int dim, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<float> w(dim);
  for (float& v : w) v = static_cast<float>(rng.uniform() * 2 - 1);
  LabeledSet set;
  set.dim = dim;
  std::vector<float> x(dim);
  while (set.size() < n) {
    float dot = 0;
    for (int k = 0; k < dim; ++k) {
      x[k] = static_cast<float>(rng.uniform() * 2 - 1);
      dot += w[k] * x[k];
    }
    if (std::abs(dot) < 0.05f) continue;  // keep a margin
    set.add(x, dot > 0 ? std::array<float, 2>{1, 0} : std::array<float, 2>{0, 1});
  }
  return set;
}

TrainOptions small_training(int epochs) {
  TrainOptions opt;
  opt.epochs = epochs;
  opt.batch = 64;
  opt.lr = 0.01;
  opt.hidden = {16};
  opt.seed = 9;
  return opt;
}

TEST(Training, SeparableSetIsLearned) {
  LabeledSet set = separable_set(5000, 8, 1);
  TrainReport r = train_epochs(set, small_training(20));
  EXPECT_GE(r.validation_accuracy, 0.99);
  EXPECT_EQ(r.train_size, 4000u);
  EXPECT_EQ(r.validation_counted, 1000u);
  ASSERT_EQ(r.epoch_loss.size(), 20u);
  int non_increasing = 0;
  for (std::size_t i = 1; i < r.epoch_loss.size(); ++i) non_increasing += r.epoch_loss[i] <= r.epoch_loss[i - 1];
  EXPECT_GE(non_increasing, 18);  // at least 90% of the 19 transitions
}

TEST(Training, NoSignalGivesMajorityRate) {
  Rng rng(3);
  LabeledSet set;
  set.dim = 8;
  std::vector<float> x(8);
  int wins = 0;
  for (int i = 0; i < 20000; ++i) {
    for (float& v : x) v = static_cast<float>(rng.uniform() * 2 - 1);
    bool win = rng.uniform() < 0.7;
    wins += win;
    set.add(x, win ? std::array<float, 2>{1, 0} : std::array<float, 2>{0, 1});
  }
  TrainReport r = train_epochs(set, small_training(10));
  EXPECT_NEAR(r.validation_accuracy, wins / 20000.0, 0.03);
}

TEST(Training, DrawsExcludedFromAccuracy) {
  LabeledSet set = separable_set(100, 4, 2);
  std::vector<float> x(4, 0.0f);
  for (int i = 0; i < 50; ++i) set.add(x, {0.5f, 0.5f});
  TrainReport r = train_epochs(set, small_training(1));
  std::size_t counted = 0;
  accuracy(r.net, set, &counted);
  EXPECT_EQ(counted, 100u);
}

TEST(Training, DeterministicAndFromScratch) {
  LabeledSet set = separable_set(600, 6, 4);
  TrainReport a = train_epochs(set, small_training(3));
  TrainReport b = train_epochs(set, small_training(3));
  EXPECT_EQ(serialize_model(a.net), serialize_model(b.net));
  TrainOptions other = small_training(3);
  other.seed = 10;
  EXPECT_NE(serialize_model(train_epochs(set, other).net), serialize_model(a.net));
}

TEST(Training, EmptyDatasetIsAConfigError) {
  LabeledSet set;
  set.dim = 4;
  EXPECT_THROW(train_epochs(set, small_training(1)), ConfigError);
}

TEST(ModelIo, RoundTripIsBitExact) {
  Net net = make_value_network(50, 12);
  auto path = (std::filesystem::temp_directory_path() / "miniccg_model_test.cfnn").string();
  save_model(net, path);
  Net back = load_model(path, 50);
  std::filesystem::remove(path);
  Rng rng(1);
  std::vector<float> x(50);
  for (int i = 0; i < 100; ++i) {
    for (float& v : x) v = static_cast<float>(rng.uniform());
    auto a = predict(net, x), b = predict(back, x);
    EXPECT_EQ(std::memcmp(a.data(), b.data(), sizeof(a)), 0);
  }
  EXPECT_EQ(serialize_model(back), serialize_model(net));
}

TEST(ModelIo, HeaderLayout) {
  Mlp<float> net({3, 2}, {Activation::Softmax});
  auto bytes = serialize_model(net);
  ASSERT_EQ(bytes.size(), 4u + 4 + 4 + (4 + 4 + 1 + 6 * 4 + 2 * 4) + 8);
  EXPECT_EQ(std::string(bytes.begin(), bytes.begin() + 4), "CFNN");
  EXPECT_EQ(bytes[4], 1);  // version, little-endian
  EXPECT_EQ(bytes[8], 1);  // one layer
  EXPECT_EQ(bytes[12], 3);
  EXPECT_EQ(bytes[16], 2);
  EXPECT_EQ(bytes[20], 2);  // softmax
}

TEST(ModelIo, RejectsDamage) {
  Net net = make_value_network(20, 1);
  auto bytes = serialize_model(net);
  for (std::size_t cut : {std::size_t(0), std::size_t(3), std::size_t(13), bytes.size() / 2, bytes.size() - 1}) {
    std::span<const std::uint8_t> part(bytes.data(), cut);
    EXPECT_THROW(deserialize_model(part), LoadError) << cut;
  }
  auto flipped = bytes;
  flipped[100] ^= 0x40;
  EXPECT_THROW(deserialize_model(flipped), LoadError);
  auto magic = bytes;
  magic[0] = 'X';
  EXPECT_THROW(deserialize_model(magic), LoadError);
  auto extra = bytes;
  extra.push_back(0);
  EXPECT_THROW(deserialize_model(extra), LoadError);
  EXPECT_THROW(deserialize_model(bytes, 372), LoadError);
  EXPECT_NO_THROW(deserialize_model(bytes, 20));
  EXPECT_THROW(load_model("/nonexistent/model.cfnn"), LoadError);
}

TEST(ModelIo, Fnv1aReference) {
  // Published FNV-1a 64 test vectors.
  const std::string a = "a", foobar = "foobar";
  EXPECT_EQ(fnv1a64({}), 0xcbf29ce484222325ULL);
  EXPECT_EQ(fnv1a64(std::span(reinterpret_cast<const std::uint8_t*>(a.data()), a.size())), 0xaf63dc4c8601ec8cULL);
  EXPECT_EQ(fnv1a64(std::span(reinterpret_cast<const std::uint8_t*>(foobar.data()), foobar.size())),
            0x85944171f73967e8ULL);
}

}  // namespace
}  // namespace miniccg
