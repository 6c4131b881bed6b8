#pragma once

#include <memory>
#include <span>
#include <vector>

#include "d2nn/wavefield.hpp"

namespace d2nn {

namespace detail {
class Fft2d;
}

/// Precomputed angular-spectrum transfer function for one (grid, pitch,
/// distance) triple. The field is zero-padded to twice its side before
/// transforming so circular wraparound stays out of the cropped window.
///
/// Immutable after construction; a single plan may be shared by any number
/// of threads.
class PropagationPlan {
 public:
  /// Throws kInvalidGeometry for grid_n < 2, pitch <= 0 or distance < 0.
  PropagationPlan(int grid_n, double pitch, double distance);

  int grid_n() const noexcept { return grid_n_; }
  int padded_n() const noexcept { return 2 * grid_n_; }
  double pitch() const noexcept { return pitch_; }
  double distance() const noexcept { return distance_; }

  /// H(fx, fy) on the padded frequency grid in FFT (unshifted) order.
  /// Entry (r, c) sits at r * padded_n() + c.
  std::span<const Complex> transfer() const noexcept { return transfer_; }

  /// Signed spatial frequency (cycles per wavelength) of padded index k.
  double frequency(int k) const noexcept;

  /// Free-space propagation over distance(). A zero distance is the exact
  /// identity: no transform is applied, so evanescent content is kept.
  Wavefield propagate(const Wavefield& field) const;

  /// Hermitian adjoint of propagate(): the same pipeline with conj(H).
  Wavefield propagate_adjoint(const Wavefield& field) const;

 private:
  Wavefield apply(const Wavefield& field, bool conjugate) const;

  int grid_n_;
  double pitch_;
  double distance_;
  std::vector<Complex> transfer_;
  std::shared_ptr<const detail::Fft2d> fft_;
};

PropagationPlan make_plan(int grid_n, double pitch, double distance);

/// Throws kInvalidGeometry when the field does not match the plan.
Wavefield propagate(const Wavefield& field, const PropagationPlan& plan);

}  // namespace d2nn
