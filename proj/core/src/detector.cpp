#include "d2nn/detector.hpp"

#include <string>

namespace d2nn {

DetectorLayout DetectorLayout::make_default(int grid_n) {
  const int side = (grid_n + kNumClasses - 1) / kNumClasses;
  if (grid_n < 5 * side) {
    throw Error(ErrorCode::kInvalidGeometry,
                "default detector layout needs grid_n >= 5, got " + std::to_string(grid_n));
  }
  const int gap = (grid_n - 5 * side) / 6;
  const int vgap = gap < 1 ? 1 : gap;
  const int block_w = 5 * side + 4 * gap;
  const int block_h = 2 * side + vgap;
  if (block_h > grid_n) {
    throw Error(ErrorCode::kInvalidGeometry, "grid too small for the default detector layout");
  }
  const int left = (grid_n - block_w) / 2;
  const int top = (grid_n - block_h) / 2;

  DetectorLayout layout;
  for (int c = 0; c < kNumClasses; ++c) {
    const int row_idx = c / 5;
    const int col_idx = c % 5;
    layout.regions[c] = DetectorRegion{top + row_idx * (side + vgap), left + col_idx * (side + gap),
                                       side, side};
  }
  layout.validate(grid_n);
  return layout;
}

void DetectorLayout::validate(int grid_n) const {
  for (int i = 0; i < kNumClasses; ++i) {
    const DetectorRegion& r = regions[i];
    if (r.height < 1 || r.width < 1) {
      throw Error(ErrorCode::kInvalidGeometry, "detector " + std::to_string(i) + " is empty");
    }
    if (r.row < 0 || r.col < 0 || r.row + r.height > grid_n || r.col + r.width > grid_n) {
      throw Error(ErrorCode::kInvalidGeometry,
                  "detector " + std::to_string(i) + " lies outside the output grid");
    }
    for (int j = 0; j < i; ++j) {
      if (r.overlaps(regions[j])) {
        throw Error(ErrorCode::kInvalidGeometry, "detectors " + std::to_string(j) + " and " +
                                                     std::to_string(i) + " overlap");
      }
    }
  }
}

Readout detector_readout(const Wavefield& output, const DetectorLayout& layout) {
  Readout out;
  for (int c = 0; c < kNumClasses; ++c) {
    const DetectorRegion& r = layout.regions[c];
    double sum = 0.0;
    for (int row = r.row; row < r.row + r.height; ++row) {
      for (int col = r.col; col < r.col + r.width; ++col) sum += std::norm(output(row, col));
    }
    out.signals[c] = sum;
  }
  out.total = total_power(output);
  return out;
}

int classify(const Signals& signals) {
  int best = 0;
  for (int c = 1; c < kNumClasses; ++c) {
    if (signals[c] > signals[best]) best = c;
  }
  return best;
}

}  // namespace d2nn
