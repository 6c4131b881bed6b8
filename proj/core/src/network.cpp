#include "d2nn/network.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <string>

namespace d2nn {

DiffractiveLayer DiffractiveLayer::transparent(int grid_n) {
  return {RealGrid(grid_n, 0.0), RealGrid(grid_n, 1.0), true};
}

DiffractiveLayer DiffractiveLayer::random_phase(int grid_n, Rng& rng) {
  DiffractiveLayer layer = transparent(grid_n);
  for (double& t : layer.theta.values()) t = rng.uniform(0.0, 2.0 * std::numbers::pi);
  return layer;
}

void DiffractiveLayer::validate(int grid_n) const {
  if (theta.n() != grid_n || amp.n() != grid_n) {
    throw Error(ErrorCode::kInvalidLayer, "layer grid does not match network grid");
  }
  for (double a : amp.values()) {
    if (!(a >= 0.0 && a <= 1.0)) throw Error(ErrorCode::kInvalidLayer, "amp outside [0,1]");
  }
  for (double t : theta.values()) {
    if (!std::isfinite(t)) throw Error(ErrorCode::kInvalidLayer, "non-finite phase");
  }
}

NetworkConfig NetworkConfig::with_grid(int grid_n) {
  NetworkConfig c;
  c.grid_n = grid_n;
  c.detectors = DetectorLayout::make_default(grid_n);
  return c;
}

std::vector<double> NetworkConfig::gaps() const {
  if (!gap_override.empty()) return gap_override;
  if (num_layers == 0) return {input_to_first + last_to_output};
  std::vector<double> g;
  g.reserve(static_cast<std::size_t>(num_layers) + 1);
  g.push_back(input_to_first);
  for (int i = 1; i < num_layers; ++i) g.push_back(layer_spacing);
  g.push_back(last_to_output);
  return g;
}

void NetworkConfig::validate() const {
  if (grid_n < 2) throw Error(ErrorCode::kInvalidGeometry, "grid_n must be >= 2");
  if (!(pitch > 0.0) || !std::isfinite(pitch)) {
    throw Error(ErrorCode::kInvalidGeometry, "pitch must be positive");
  }
  if (num_layers < 0) throw Error(ErrorCode::kInvalidGeometry, "num_layers must be >= 0");
  for (double d : {input_to_first, layer_spacing, last_to_output}) {
    if (!(d >= 0.0) || !std::isfinite(d)) {
      throw Error(ErrorCode::kInvalidGeometry, "distances must be finite and >= 0");
    }
  }
  if (!gap_override.empty()) {
    if (gap_override.size() != static_cast<std::size_t>(num_layers) + 1) {
      throw Error(ErrorCode::kInvalidGeometry, "gap_override needs num_layers + 1 entries");
    }
    for (double d : gap_override) {
      if (!(d >= 0.0) || !std::isfinite(d)) {
        throw Error(ErrorCode::kInvalidGeometry, "gap distances must be finite and >= 0");
      }
    }
  }
  nonlinearity.validate();
  detectors.validate(grid_n);
}

bool NetworkConfig::spacing_exceeds_recommended() const noexcept {
  if (layer_spacing > 50.0) return true;
  if (gap_override.size() > 2) {
    for (std::size_t i = 1; i + 1 < gap_override.size(); ++i) {
      if (gap_override[i] > 50.0) return true;
    }
  }
  return false;
}

OpticalPath::OpticalPath(NetworkConfig config) : config_(std::move(config)) {
  config_.validate();
  std::map<double, std::shared_ptr<const PropagationPlan>> by_distance;
  for (double d : config_.gaps()) {
    auto& plan = by_distance[d];
    if (!plan) plan = std::make_shared<const PropagationPlan>(config_.grid_n, config_.pitch, d);
    plans_.push_back(plan);
  }
}

Wavefield encode_input(const RealGrid& image, Encoding mode, double pitch) {
  Wavefield field(image.n(), pitch);
  auto dst = field.values();
  for (std::size_t p = 0; p < image.size(); ++p) {
    const double v = image[p];
    if (!(v >= 0.0 && v <= 1.0)) {
      throw Error(ErrorCode::kInvalidInput,
                  "image pixel " + std::to_string(p) + " outside [0,1]: " + std::to_string(v));
    }
    dst[p] = mode == Encoding::kAmplitude ? Complex{v, 0.0}
                                          : std::polar(1.0, std::numbers::pi * v);
  }
  return field;
}

ForwardTrace forward(const OpticalPath& path, std::span<const DiffractiveLayer> layers,
                     const Wavefield& input) {
  const NetworkConfig& cfg = path.config();
  if (layers.size() != static_cast<std::size_t>(cfg.num_layers)) {
    throw Error(ErrorCode::kInvalidGeometry,
                "expected " + std::to_string(cfg.num_layers) + " layers, got " +
                    std::to_string(layers.size()));
  }
  if (input.grid_n() != cfg.grid_n || input.pitch() != cfg.pitch) {
    throw Error(ErrorCode::kInvalidGeometry, "input field does not match network geometry");
  }

  ForwardTrace trace;
  trace.pre_layer_fields.reserve(layers.size());
  Wavefield field = path.gap(0).propagate(input);
  for (std::size_t i = 0; i < layers.size(); ++i) {
    const DiffractiveLayer& layer = layers[i];
    if (layer.grid_n() != cfg.grid_n) {
      throw Error(ErrorCode::kInvalidGeometry, "layer " + std::to_string(i) + " grid mismatch");
    }
    trace.pre_layer_fields.push_back(field);
    field = modulate(field, layer.amp, layer.theta);
    if (!cfg.nonlinearity.is_linear()) field = apply_nonlinearity(field, cfg.nonlinearity);
    field = path.gap(i + 1).propagate(field);
  }
  const Readout readout = detector_readout(field, cfg.detectors);
  trace.detector_signals = readout.signals;
  trace.total_output_power = readout.total;
  trace.output_field = std::move(field);
  return trace;
}

ForwardTrace forward(const NetworkConfig& config, std::span<const DiffractiveLayer> layers,
                     const Wavefield& input) {
  return forward(OpticalPath(config), layers, input);
}

std::vector<Complex> ComplexMatrix::apply(std::span<const Complex> x) const {
  if (x.size() != static_cast<std::size_t>(cols)) {
    throw Error(ErrorCode::kInvalidGeometry, "matrix/vector size mismatch");
  }
  std::vector<Complex> y(static_cast<std::size_t>(rows));
  for (int r = 0; r < rows; ++r) {
    Complex acc{};
    const Complex* row = &data[static_cast<std::size_t>(r) * cols];
    for (int c = 0; c < cols; ++c) acc += row[c] * x[c];
    y[r] = acc;
  }
  return y;
}

ComplexMatrix squeeze_to_matrix(const NetworkConfig& config,
                                std::span<const DiffractiveLayer> layers) {
  if (!config.nonlinearity.is_linear()) {
    throw Error(ErrorCode::kUnsupported, "squeeze_to_matrix requires a linear network");
  }
  if (config.grid_n > kSqueezeMaxGrid) {
    throw Error(ErrorCode::kCostGuard, "squeeze_to_matrix limited to grid_n <= " +
                                           std::to_string(kSqueezeMaxGrid));
  }
  const OpticalPath path(config);
  const int n = config.grid_n;
  const int size = n * n;
  ComplexMatrix m{size, size, std::vector<Complex>(static_cast<std::size_t>(size) * size)};
  Wavefield basis(n, config.pitch);
  for (int j = 0; j < size; ++j) {
    basis[j] = Complex{1.0, 0.0};
    const ForwardTrace trace = forward(path, layers, basis);
    basis[j] = Complex{};
    auto col = trace.output_field.values();
    for (int i = 0; i < size; ++i) m(i, j) = col[i];
  }
  return m;
}

}  // namespace d2nn
