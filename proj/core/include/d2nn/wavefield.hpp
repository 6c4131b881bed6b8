#pragma once

#include <complex>
#include <span>
#include <vector>

#include "d2nn/grid.hpp"

namespace d2nn {

using Complex = std::complex<double>;

/// Complex scalar field sampled on a square grid. Lengths are in units of
/// the illumination wavelength, so `pitch` = 0.5 means half-wavelength pixels.
class Wavefield {
 public:
  /// Zero field. Throws kInvalidGeometry for grid_n < 2 or pitch <= 0.
  Wavefield(int grid_n, double pitch);
  /// Throws kInvalidInput if any value is non-finite.
  Wavefield(int grid_n, double pitch, std::vector<Complex> values);

  static Wavefield uniform(int grid_n, double pitch, Complex value);

  int grid_n() const noexcept { return values_.n(); }
  double pitch() const noexcept { return pitch_; }
  std::size_t size() const noexcept { return values_.size(); }

  Complex& operator()(int row, int col) { return values_(row, col); }
  const Complex& operator()(int row, int col) const { return values_(row, col); }
  Complex& operator[](std::size_t i) { return values_[i]; }
  const Complex& operator[](std::size_t i) const { return values_[i]; }

  std::span<Complex> values() noexcept { return values_.values(); }
  std::span<const Complex> values() const noexcept { return values_.values(); }

  bool same_geometry(const Wavefield& other) const noexcept {
    return grid_n() == other.grid_n() && pitch_ == other.pitch_;
  }

  bool operator==(const Wavefield&) const = default;

 private:
  double pitch_ = 0.0;
  Grid<Complex> values_;
};

/// Sum of |E|^2 over all pixels.
double total_power(const Wavefield& field);

/// out = field * amplitude * exp(i * phase), pixelwise.
/// Throws kInvalidGeometry on shape mismatch and kInvalidLayer when an
/// amplitude lies outside [0, 1].
Wavefield modulate(const Wavefield& field, const RealGrid& amplitude, const RealGrid& phase);

}  // namespace d2nn
