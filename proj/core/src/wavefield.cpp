#include "d2nn/wavefield.hpp"

#include <cmath>
#include <string>

namespace d2nn {
namespace {

void check_geometry(int grid_n, double pitch) {
  if (grid_n < 2) {
    throw Error(ErrorCode::kInvalidGeometry, "grid_n must be >= 2, got " + std::to_string(grid_n));
  }
  if (!(pitch > 0.0) || !std::isfinite(pitch)) {
    throw Error(ErrorCode::kInvalidGeometry, "pitch must be positive and finite");
  }
}

}  // namespace

Wavefield::Wavefield(int grid_n, double pitch) : pitch_(pitch) {
  check_geometry(grid_n, pitch);
  values_ = Grid<Complex>(grid_n);
}

Wavefield::Wavefield(int grid_n, double pitch, std::vector<Complex> values) : pitch_(pitch) {
  check_geometry(grid_n, pitch);
  values_ = Grid<Complex>(grid_n, std::move(values));
  for (const Complex& v : values_.values()) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw Error(ErrorCode::kInvalidInput, "wavefield contains a non-finite value");
    }
  }
}

Wavefield Wavefield::uniform(int grid_n, double pitch, Complex value) {
  Wavefield f(grid_n, pitch);
  for (Complex& v : f.values()) v = value;
  return f;
}

double total_power(const Wavefield& field) {
  double sum = 0.0;
  for (const Complex& v : field.values()) sum += std::norm(v);
  return sum;
}

Wavefield modulate(const Wavefield& field, const RealGrid& amplitude, const RealGrid& phase) {
  if (amplitude.n() != field.grid_n() || phase.n() != field.grid_n()) {
    throw Error(ErrorCode::kInvalidGeometry, "modulation mask does not match field grid");
  }
  Wavefield out = field;
  auto dst = out.values();
  for (std::size_t p = 0; p < dst.size(); ++p) {
    const double a = amplitude[p];
    if (!(a >= 0.0 && a <= 1.0)) {
      throw Error(ErrorCode::kInvalidLayer,
                  "amplitude outside [0,1] at pixel " + std::to_string(p));
    }
    dst[p] *= std::polar(a, phase[p]);
  }
  return out;
}

}  // namespace d2nn
