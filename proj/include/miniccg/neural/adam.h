#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "miniccg/engine/errors.h"
#include "miniccg/neural/mlp.h"

namespace miniccg {

struct AdamConfig {
  double lr = 0.001;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

// Adam with bias correction. Moments are kept in double whatever the
// parameter type.
template <typename T>
class Adam {
 public:
  explicit Adam(AdamConfig cfg = {}) : cfg_(cfg) {}

  std::int64_t steps() const { return t_; }
  const AdamConfig& config() const { return cfg_; }

  // One update over a list of parameter tensors. The tensor list must have
  // the same shapes on every call.
  void step(const std::vector<std::span<T>>& params, const std::vector<std::span<const T>>& grads) {
    if (params.size() != grads.size()) throw ContractViolation("Adam: parameter/gradient count mismatch");
    if (m_.empty()) {
      for (const auto& p : params) {
        m_.emplace_back(p.size(), 0.0);
        v_.emplace_back(p.size(), 0.0);
      }
    }
    if (m_.size() != params.size()) throw ContractViolation("Adam: tensor list changed between steps");
    ++t_;
    const double c1 = 1.0 - std::pow(cfg_.beta1, static_cast<double>(t_));
    const double c2 = 1.0 - std::pow(cfg_.beta2, static_cast<double>(t_));
    for (std::size_t i = 0; i < params.size(); ++i) {
      if (params[i].size() != grads[i].size() || params[i].size() != m_[i].size()) {
        throw ContractViolation("Adam: shape mismatch");
      }
      std::span<T> p = params[i];
      std::span<const T> g = grads[i];
      std::vector<double>& m = m_[i];
      std::vector<double>& v = v_[i];
      for (std::size_t k = 0; k < p.size(); ++k) {
        double gk = static_cast<double>(g[k]);
        m[k] = cfg_.beta1 * m[k] + (1.0 - cfg_.beta1) * gk;
        v[k] = cfg_.beta2 * v[k] + (1.0 - cfg_.beta2) * gk * gk;
        double mhat = m[k] / c1;
        double vhat = v[k] / c2;
        p[k] = static_cast<T>(static_cast<double>(p[k]) - cfg_.lr * mhat / (std::sqrt(vhat) + cfg_.eps));
      }
    }
  }

  // Steps every layer of `net` and refreshes its transposed weights.
  void step(Mlp<T>& net, const std::vector<LayerGrad<T>>& grads) {
    std::vector<std::span<T>> params;
    std::vector<std::span<const T>> gs;
    auto& layers = net.layers();
    for (std::size_t i = 0; i < layers.size(); ++i) {
      params.emplace_back(layers[i].weights);
      gs.emplace_back(grads[i].weights);
      params.emplace_back(layers[i].biases);
      gs.emplace_back(grads[i].biases);
    }
    step(params, gs);
    net.sync();
  }

 private:
  AdamConfig cfg_;
  std::int64_t t_ = 0;
  std::vector<std::vector<double>> m_, v_;
};

}  // namespace miniccg
