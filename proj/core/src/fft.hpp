#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>

namespace d2nn::detail {

/// Unnormalized in-place 2D FFT of an n x n row-major complex array, backed
/// by FFTW. Plans are created once per size with FFTW_ESTIMATE so that the
/// chosen algorithm, and therefore every result bit, does not depend on
/// timing measurements. Execution is thread-safe; plan creation is
/// serialized internally.
class Fft2d {
 public:
  static std::shared_ptr<const Fft2d> for_size(int n);

  ~Fft2d();
  Fft2d(const Fft2d&) = delete;
  Fft2d& operator=(const Fft2d&) = delete;

  int n() const noexcept { return n_; }
  /// `data` must come from scratch() (FFTW requires the planning alignment).
  void forward(std::span<std::complex<double>> data) const;
  void inverse(std::span<std::complex<double>> data) const;

 private:
  explicit Fft2d(int n);

  int n_;
  void* forward_plan_ = nullptr;
  void* inverse_plan_ = nullptr;
};

/// Per-thread, SIMD-aligned work buffer of at least `count` elements.
std::span<std::complex<double>> scratch(std::size_t count);

}  // namespace d2nn::detail
