#pragma once

#include <array>

#include "d2nn/wavefield.hpp"

namespace d2nn {

inline constexpr int kNumClasses = 10;

using Signals = std::array<double, kNumClasses>;

/// Axis-aligned pixel rectangle [row, row + height) x [col, col + width).
struct DetectorRegion {
  int row = 0;
  int col = 0;
  int height = 1;
  int width = 1;

  bool contains(int r, int c) const noexcept {
    return r >= row && r < row + height && c >= col && c < col + width;
  }
  bool overlaps(const DetectorRegion& o) const noexcept {
    return row < o.row + o.height && o.row < row + height && col < o.col + o.width &&
           o.col < col + width;
  }
  bool operator==(const DetectorRegion&) const = default;
};

/// One detector per class on the output plane.
struct DetectorLayout {
  std::array<DetectorRegion, kNumClasses> regions{};

  /// Ten squares of side ceil(n/10) in two centered rows of five. Horizontal
  /// gaps are floor((n - 5*side)/6) (zero on grids too small for a margin),
  /// the vertical gap is at least one pixel. Needs n >= 5.
  static DetectorLayout make_default(int grid_n);

  /// Throws kInvalidGeometry if a region is empty, leaves the grid, or
  /// overlaps another region.
  void validate(int grid_n) const;

  bool operator==(const DetectorLayout&) const = default;
};

struct Readout {
  Signals signals{};
  double total = 0.0;
};

/// Integrated |E|^2 over each region, plus the whole-plane power.
Readout detector_readout(const Wavefield& output, const DetectorLayout& layout);

/// Index of the largest signal; ties go to the lowest index.
int classify(const Signals& signals);

}  // namespace d2nn
