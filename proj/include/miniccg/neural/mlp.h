#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "miniccg/engine/errors.h"
#include "miniccg/engine/rng.h"

namespace miniccg {

enum class Activation : std::uint8_t { None = 0, Tanh = 1, Softmax = 2 };

template <typename T>
struct DenseLayer {
  int in = 0;
  int out = 0;
  Activation activation = Activation::None;
  std::vector<T> weights;  // out x in, row-major
  std::vector<T> biases;   // out
  std::vector<T> wt;       // in x out copy of weights, used by forward

  DenseLayer() = default;
  DenseLayer(int in_dim, int out_dim, Activation act)
      : in(in_dim), out(out_dim), activation(act), weights(std::size_t(in_dim) * out_dim), biases(out_dim) {
    sync();
  }

  // Rebuilds the transposed copy after the weights change.
  void sync() {
    wt.resize(weights.size());
    for (int o = 0; o < out; ++o) {
      for (int k = 0; k < in; ++k) wt[std::size_t(k) * out + o] = weights[std::size_t(o) * in + k];
    }
  }
};

template <typename T>
struct LayerGrad {
  std::vector<T> weights;
  std::vector<T> biases;
};

template <typename T>
void apply_activation(Activation act, T* z, int n) {
  switch (act) {
    case Activation::None: break;
    case Activation::Tanh:
      for (int i = 0; i < n; ++i) z[i] = std::tanh(z[i]);
      break;
    case Activation::Softmax: {
      T mx = *std::max_element(z, z + n);
      T sum = 0;
      for (int i = 0; i < n; ++i) {
        z[i] = std::exp(z[i] - mx);
        sum += z[i];
      }
      for (int i = 0; i < n; ++i) z[i] /= sum;
      break;
    }
  }
}

// Cross-entropy of a probability vector against a target distribution;
// predictions are clamped to [1e-12, 1] before the log.
template <typename T>
T cross_entropy(std::span<const T> pred, std::span<const T> target) {
  T loss = 0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    T p = std::clamp<T>(pred[i], T(1e-12), T(1));
    loss -= target[i] * std::log(p);
  }
  return loss;
}

// Dense feed-forward network. Hidden layers may use any activation; a
// Softmax output layer is assumed to be trained with cross-entropy.
template <typename T>
class Mlp {
 public:
  static constexpr int kMaxWidth = 512;

  Mlp() = default;
  Mlp(const std::vector<int>& dims, const std::vector<Activation>& acts) {
    if (dims.size() < 2 || acts.size() != dims.size() - 1) throw ContractViolation("Mlp: bad layer spec");
    for (std::size_t i = 0; i + 1 < dims.size(); ++i) {
      if (dims[i + 1] > kMaxWidth || dims[i] < 1 || dims[i + 1] < 1) throw ContractViolation("Mlp: bad width");
      layers_.emplace_back(dims[i], dims[i + 1], acts[i]);
    }
  }

  // Uniform(-sqrt(6/(fan_in+fan_out)), +...) weights, zero biases.
  void init_glorot(std::uint64_t seed) {
    Rng rng(seed);
    for (auto& l : layers_) {
      T limit = std::sqrt(T(6) / T(l.in + l.out));
      for (T& w : l.weights) w = static_cast<T>((rng.uniform() * 2.0 - 1.0) * limit);
      std::fill(l.biases.begin(), l.biases.end(), T(0));
      l.sync();
    }
  }

  int input_dim() const { return layers_.empty() ? 0 : layers_.front().in; }
  int output_dim() const { return layers_.empty() ? 0 : layers_.back().out; }
  std::vector<DenseLayer<T>>& layers() { return layers_; }
  const std::vector<DenseLayer<T>>& layers() const { return layers_; }

  std::size_t parameter_count() const {
    std::size_t n = 0;
    for (const auto& l : layers_) n += l.weights.size() + l.biases.size();
    return n;
  }

  void sync() {
    for (auto& l : layers_) l.sync();
  }

  // Single-sample inference. Thread-safe: scratch lives on the stack.
  void forward(std::span<const T> x, std::span<T> out) const {
    if (static_cast<int>(x.size()) != input_dim()) {
      throw ContractViolation("Mlp::forward: input has " + std::to_string(x.size()) + " features, expected " +
                              std::to_string(input_dim()));
    }
    if (static_cast<int>(out.size()) != output_dim()) throw ContractViolation("Mlp::forward: bad output size");
    std::array<T, kMaxWidth> a{}, b{};
    const T* cur = x.data();
    T* next = a.data();
    for (std::size_t li = 0; li < layers_.size(); ++li) {
      const auto& l = layers_[li];
      affine(l, cur, next);
      apply_activation(l.activation, next, l.out);
      cur = next;
      next = (next == a.data()) ? b.data() : a.data();
    }
    std::copy(cur, cur + output_dim(), out.begin());
  }

  std::vector<T> forward(std::span<const T> x) const {
    std::vector<T> out(output_dim());
    forward(x, out);
    return out;
  }

  std::vector<LayerGrad<T>> zero_grads() const {
    std::vector<LayerGrad<T>> g(layers_.size());
    for (std::size_t i = 0; i < layers_.size(); ++i) {
      g[i].weights.assign(layers_[i].weights.size(), T(0));
      g[i].biases.assign(layers_[i].biases.size(), T(0));
    }
    return g;
  }

  // Mean cross-entropy over the batch; `grads` receives the exact gradient of
  // that mean. `inputs` is batch x input_dim, `targets` batch x output_dim.
  T forward_backward(std::span<const T> inputs, std::span<const T> targets, std::size_t batch,
                     std::vector<LayerGrad<T>>& grads) {
    if (inputs.size() != batch * std::size_t(input_dim()) || targets.size() != batch * std::size_t(output_dim())) {
      throw ContractViolation("Mlp::forward_backward: shape mismatch");
    }
    if (layers_.back().activation != Activation::Softmax) {
      throw ContractViolation("Mlp::forward_backward: output layer must be softmax");
    }
    grads = zero_grads();
    const std::size_t L = layers_.size();
    acts_.resize(L + 1);
    acts_[0].assign(inputs.begin(), inputs.end());
    for (std::size_t li = 0; li < L; ++li) {
      const auto& l = layers_[li];
      acts_[li + 1].resize(batch * l.out);
      for (std::size_t s = 0; s < batch; ++s) {
        T* z = &acts_[li + 1][s * l.out];
        affine(l, &acts_[li][s * l.in], z);
        apply_activation(l.activation, z, l.out);
      }
    }

    T loss = 0;
    const int out_dim = output_dim();
    delta_.assign(batch * out_dim, T(0));
    for (std::size_t s = 0; s < batch; ++s) {
      std::span<const T> p(&acts_[L][s * out_dim], out_dim);
      std::span<const T> y(&targets[s * out_dim], out_dim);
      loss += cross_entropy(p, y);
      for (int o = 0; o < out_dim; ++o) delta_[s * out_dim + o] = p[o] - y[o];
    }

    for (std::size_t li = L; li-- > 0;) {
      const auto& l = layers_[li];
      auto& g = grads[li];
      const std::vector<T>& x = acts_[li];
      bool need_dx = li > 0;
      if (need_dx) prev_.assign(batch * l.in, T(0));
      for (std::size_t s = 0; s < batch; ++s) {
        const T* d = &delta_[s * l.out];
        const T* xs = &x[s * l.in];
        T* dx = need_dx ? &prev_[s * l.in] : nullptr;
        for (int o = 0; o < l.out; ++o) {
          T go = d[o];
          if (go == T(0)) continue;
          g.biases[o] += go;
          T* gw = &g.weights[std::size_t(o) * l.in];
          const T* w = &l.weights[std::size_t(o) * l.in];
          for (int k = 0; k < l.in; ++k) gw[k] += go * xs[k];
          if (dx) {
            for (int k = 0; k < l.in; ++k) dx[k] += go * w[k];
          }
        }
      }
      if (need_dx) {
        // Previous layer's activation derivative.
        const auto& pl = layers_[li - 1];
        if (pl.activation == Activation::Tanh) {
          for (std::size_t i = 0; i < prev_.size(); ++i) prev_[i] *= T(1) - x[i] * x[i];
        } else if (pl.activation == Activation::Softmax) {
          throw ContractViolation("Mlp: softmax is only supported on the output layer");
        }
        delta_.swap(prev_);
      }
    }

    T scale = T(1) / static_cast<T>(batch);
    for (auto& g : grads) {
      for (T& v : g.weights) v *= scale;
      for (T& v : g.biases) v *= scale;
    }
    return loss * scale;
  }

 private:
  static void affine(const DenseLayer<T>& l, const T* x, T* z) {
    std::copy(l.biases.begin(), l.biases.end(), z);
    for (int k = 0; k < l.in; ++k) {
      T xk = x[k];
      if (xk == T(0)) continue;
      const T* col = &l.wt[std::size_t(k) * l.out];
      for (int o = 0; o < l.out; ++o) z[o] += xk * col[o];
    }
  }

  std::vector<DenseLayer<T>> layers_;
  std::vector<std::vector<T>> acts_;
  std::vector<T> delta_, prev_;
};

}  // namespace miniccg
