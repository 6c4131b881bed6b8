#pragma once

#include <span>
#include <vector>

#include "d2nn/gradients.hpp"

namespace d2nn {

enum class OptimizerKind { kSgd, kAdam };

struct OptimizerSettings {
  OptimizerKind kind = OptimizerKind::kAdam;
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

/// First-order update of layer phases. Amplitudes are not trained.
///
/// A layer is skipped when it is non-trainable or frozen by the per-call
/// mask; skipped layers keep their parameters and their Adam moments and
/// step counts untouched, bit for bit.
class Optimizer {
 public:
  explicit Optimizer(OptimizerSettings settings);

  void step(std::span<DiffractiveLayer> layers, const GradientSet& grads,
            std::span<const bool> frozen = {});

  const OptimizerSettings& settings() const noexcept { return settings_; }

 private:
  struct Moments {
    std::vector<double> m;
    std::vector<double> v;
    long steps = 0;
  };

  OptimizerSettings settings_;
  std::vector<Moments> state_;
};

}  // namespace d2nn
