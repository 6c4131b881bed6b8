#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "d2nn/error.hpp"

namespace d2nn {

/// Square row-major array of side `n`. Used for images, phase maps and
/// amplitude masks; Wavefield wraps a complex grid together with a pitch.
template <typename T>
class Grid {
 public:
  Grid() = default;
  explicit Grid(int n, T fill = T{}) : n_(n), data_(checked_size(n), fill) {}
  Grid(int n, std::vector<T> data) : n_(n), data_(std::move(data)) {
    if (data_.size() != checked_size(n)) {
      throw Error(ErrorCode::kInvalidGeometry, "grid data size does not match side length");
    }
  }

  int n() const noexcept { return n_; }
  std::size_t size() const noexcept { return data_.size(); }

  T& operator()(int row, int col) { return data_[static_cast<std::size_t>(row) * n_ + col]; }
  const T& operator()(int row, int col) const {
    return data_[static_cast<std::size_t>(row) * n_ + col];
  }
  T& operator[](std::size_t i) { return data_[i]; }
  const T& operator[](std::size_t i) const { return data_[i]; }

  std::span<T> values() noexcept { return data_; }
  std::span<const T> values() const noexcept { return data_; }
  const std::vector<T>& vector() const noexcept { return data_; }

  bool operator==(const Grid&) const = default;

 private:
  static std::size_t checked_size(int n) {
    if (n < 1) throw Error(ErrorCode::kInvalidGeometry, "grid side must be positive");
    return static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
  }

  int n_ = 0;
  std::vector<T> data_;
};

using RealGrid = Grid<double>;

}  // namespace d2nn
