#include "d2nn/gradients.hpp"

#include <cmath>
#include <string>

namespace d2nn {

LossGrad mse_loss(const Signals& signals, double total, int target) {
  if (!(total > 0.0) || !std::isfinite(total)) {
    throw Error(ErrorCode::kDegenerateOutput, "output-plane power is " + std::to_string(total));
  }
  if (target < 0 || target >= kNumClasses) {
    throw Error(ErrorCode::kInvalidArgument, "target class out of range");
  }
  constexpr double kInvClasses = 1.0 / kNumClasses;
  LossGrad out;
  double weighted = 0.0;
  for (int c = 0; c < kNumClasses; ++c) {
    const double residual = signals[c] / total - (c == target ? 1.0 : 0.0);
    out.loss += residual * residual;
    out.d_signals[c] = 2.0 * kInvClasses * residual / total;
    weighted += residual * signals[c];
  }
  out.loss *= kInvClasses;
  out.d_total = -2.0 * kInvClasses * weighted / (total * total);
  return out;
}

RealGrid intensity_seed(const DetectorLayout& layout, int grid_n, const Signals& d_signals,
                        double d_total) {
  RealGrid seed(grid_n, d_total);
  for (int c = 0; c < kNumClasses; ++c) {
    const DetectorRegion& r = layout.regions[c];
    for (int row = r.row; row < r.row + r.height; ++row) {
      for (int col = r.col; col < r.col + r.width; ++col) seed(row, col) += d_signals[c];
    }
  }
  return seed;
}

}  // namespace d2nn
