#include "d2nn/propagation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fft.hpp"

namespace d2nn {

PropagationPlan::PropagationPlan(int grid_n, double pitch, double distance)
    : grid_n_(grid_n), pitch_(pitch), distance_(distance) {
  if (grid_n < 2) throw Error(ErrorCode::kInvalidGeometry, "grid_n must be >= 2");
  if (!(pitch > 0.0) || !std::isfinite(pitch)) {
    throw Error(ErrorCode::kInvalidGeometry, "pitch must be positive and finite");
  }
  if (!(distance >= 0.0) || !std::isfinite(distance)) {
    throw Error(ErrorCode::kInvalidGeometry, "propagation distance must be >= 0");
  }

  const int m = padded_n();
  transfer_.resize(static_cast<std::size_t>(m) * m);
  for (int r = 0; r < m; ++r) {
    const double fy = frequency(r);
    for (int c = 0; c < m; ++c) {
      const double fx = frequency(c);
      const double f2 = fx * fx + fy * fy;
      Complex h{0.0, 0.0};
      if (f2 <= 1.0) {
        const double kz = std::sqrt(1.0 - f2);
        h = std::polar(1.0, 2.0 * std::numbers::pi * distance * kz);
      }
      transfer_[static_cast<std::size_t>(r) * m + c] = h;
    }
  }
  fft_ = detail::Fft2d::for_size(m);
}

double PropagationPlan::frequency(int k) const noexcept {
  const int m = padded_n();
  const int signed_k = k < m / 2 ? k : k - m;
  return static_cast<double>(signed_k) / (static_cast<double>(m) * pitch_);
}

Wavefield PropagationPlan::propagate(const Wavefield& field) const { return apply(field, false); }

Wavefield PropagationPlan::propagate_adjoint(const Wavefield& field) const {
  return apply(field, true);
}

Wavefield PropagationPlan::apply(const Wavefield& field, bool conjugate) const {
  if (field.grid_n() != grid_n_ || field.pitch() != pitch_) {
    throw Error(ErrorCode::kInvalidGeometry, "field geometry does not match propagation plan");
  }
  if (distance_ == 0.0) return field;

  const int n = grid_n_;
  const int m = padded_n();
  const std::size_t count = static_cast<std::size_t>(m) * m;
  auto buf = detail::scratch(count);
  std::fill(buf.begin(), buf.end(), Complex{});
  auto src = field.values();
  for (int r = 0; r < n; ++r) {
    std::copy_n(src.begin() + static_cast<std::ptrdiff_t>(r) * n, n,
                buf.begin() + static_cast<std::ptrdiff_t>(r) * m);
  }

  fft_->forward(buf);
  const double scale = 1.0 / static_cast<double>(count);
  if (conjugate) {
    for (std::size_t k = 0; k < count; ++k) buf[k] *= std::conj(transfer_[k]) * scale;
  } else {
    for (std::size_t k = 0; k < count; ++k) buf[k] *= transfer_[k] * scale;
  }
  fft_->inverse(buf);

  Wavefield out(n, pitch_);
  auto dst = out.values();
  for (int r = 0; r < n; ++r) {
    std::copy_n(buf.begin() + static_cast<std::ptrdiff_t>(r) * m, n,
                dst.begin() + static_cast<std::ptrdiff_t>(r) * n);
  }
  return out;
}

PropagationPlan make_plan(int grid_n, double pitch, double distance) {
  return PropagationPlan(grid_n, pitch, distance);
}

Wavefield propagate(const Wavefield& field, const PropagationPlan& plan) {
  return plan.propagate(field);
}

}  // namespace d2nn
