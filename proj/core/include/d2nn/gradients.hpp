#pragma once

#include <span>
#include <vector>

#include "d2nn/network.hpp"

namespace d2nn {

/// MSE on power-normalized detector signals:
///   s~_c = signals[c] / total,  loss = (1/10) * sum_c (s~_c - y_c)^2
/// with y one-hot at the target. d_signals and d_total are the exact
/// partials of the loss with respect to the raw signals and the total.
struct LossGrad {
  double loss = 0.0;
  Signals d_signals{};
  double d_total = 0.0;
};

/// Throws kDegenerateOutput when total <= 0, kInvalidArgument for a target
/// outside 0..9.
LossGrad mse_loss(const Signals& signals, double total, int target);

/// dL/dI for every output pixel, given the loss partials with respect to
/// the detector signals and the total power: d_total everywhere plus
/// d_signals[c] inside region c.
RealGrid intensity_seed(const DetectorLayout& layout, int grid_n, const Signals& d_signals,
                        double d_total);

struct LayerGradient {
  RealGrid d_theta;
  RealGrid d_amp;
};

using GradientSet = std::vector<LayerGradient>;

/// Reverse-mode gradient of a loss that depends on the output intensity.
///
/// With dL/dI given per output pixel, the output adjoint is A = dL/dI * E.
/// It is carried back through each free-space gap with the conjugate
/// transfer function and through each layer t = a * exp(i * theta) by
/// multiplication with conj(t). For layer input u and output adjoint A:
///   dL/dtheta = 2 * Im(A * conj(t * u)),   dL/da = 2 * Re(conj(A) * exp(i * theta) * u).
///
/// Only linear networks are supported (kUnsupported otherwise).
GradientSet backward(const OpticalPath& path, std::span<const DiffractiveLayer> layers,
                     const ForwardTrace& trace, const RealGrid& output_intensity_grad);

/// Zeroes the gradients of non-trainable layers.
void mask_frozen(GradientSet& grads, std::span<const DiffractiveLayer> layers);

}  // namespace d2nn
