#include "d2nn/optimizer.hpp"

#include <cmath>

namespace d2nn {

Optimizer::Optimizer(OptimizerSettings settings) : settings_(settings) {
  if (!(settings_.learning_rate > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "learning_rate must be positive");
  }
}

void Optimizer::step(std::span<DiffractiveLayer> layers, const GradientSet& grads,
                     std::span<const bool> frozen) {
  if (grads.size() != layers.size()) {
    throw Error(ErrorCode::kInvalidGeometry, "gradient set does not match layer count");
  }
  if (!frozen.empty() && frozen.size() != layers.size()) {
    throw Error(ErrorCode::kInvalidArgument, "freeze mask does not match layer count");
  }
  if (state_.size() < layers.size()) state_.resize(layers.size());

  const double lr = settings_.learning_rate;
  for (std::size_t i = 0; i < layers.size(); ++i) {
    DiffractiveLayer& layer = layers[i];
    if (!layer.trainable || (!frozen.empty() && frozen[i])) continue;
    auto theta = layer.theta.values();
    const auto g = grads[i].d_theta.values();
    if (g.size() != theta.size()) {
      throw Error(ErrorCode::kInvalidGeometry, "gradient shape does not match layer");
    }

    if (settings_.kind == OptimizerKind::kSgd) {
      for (std::size_t p = 0; p < theta.size(); ++p) theta[p] -= lr * g[p];
      continue;
    }

    Moments& s = state_[i];
    if (s.m.size() != theta.size()) {
      s.m.assign(theta.size(), 0.0);
      s.v.assign(theta.size(), 0.0);
      s.steps = 0;
    }
    ++s.steps;
    const double b1 = settings_.beta1;
    const double b2 = settings_.beta2;
    const double c1 = 1.0 - std::pow(b1, static_cast<double>(s.steps));
    const double c2 = 1.0 - std::pow(b2, static_cast<double>(s.steps));
    for (std::size_t p = 0; p < theta.size(); ++p) {
      s.m[p] = b1 * s.m[p] + (1.0 - b1) * g[p];
      s.v[p] = b2 * s.v[p] + (1.0 - b2) * g[p] * g[p];
      const double m_hat = s.m[p] / c1;
      const double v_hat = s.v[p] / c2;
      theta[p] -= lr * m_hat / (std::sqrt(v_hat) + settings_.epsilon);
    }
  }
}

}  // namespace d2nn
