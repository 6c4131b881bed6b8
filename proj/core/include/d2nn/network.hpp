#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "d2nn/detector.hpp"
#include "d2nn/nonlinearity.hpp"
#include "d2nn/propagation.hpp"
#include "d2nn/random.hpp"

namespace d2nn {

enum class Encoding { kAmplitude, kPhase };

/// A diffractive layer: per-pixel transmission t = amp * exp(i * theta).
/// theta is an unconstrained real parameter (no wrapping).
struct DiffractiveLayer {
  RealGrid theta;
  RealGrid amp;
  bool trainable = true;

  /// theta = 0, amp = 1: a layer that leaves the field untouched.
  static DiffractiveLayer transparent(int grid_n);
  /// theta ~ U[0, 2*pi), amp = 1.
  static DiffractiveLayer random_phase(int grid_n, Rng& rng);

  int grid_n() const noexcept { return theta.n(); }
  /// Throws kInvalidLayer on shape mismatch or amp outside [0,1].
  void validate(int grid_n) const;

  bool operator==(const DiffractiveLayer&) const = default;
};

struct NetworkConfig {
  int grid_n = 64;
  double pitch = 0.5;
  int num_layers = 5;
  double input_to_first = 40.0;
  double layer_spacing = 40.0;
  double last_to_output = 40.0;
  Encoding encoding = Encoding::kAmplitude;
  NonlinearSpec nonlinearity;
  DetectorLayout detectors = DetectorLayout::make_default(64);
  /// Optional explicit free-space gaps, num_layers + 1 entries
  /// (input->L1, L1->L2, ..., LN->output). Overrides the three distance
  /// fields when non-empty; produced by layer patching.
  std::vector<double> gap_override;

  /// Default config on a grid of side n (detector layout sized to match).
  static NetworkConfig with_grid(int grid_n);

  /// Free-space distances between consecutive planes. With no layers the
  /// single gap is input_to_first + last_to_output.
  std::vector<double> gaps() const;

  /// Throws kInvalidGeometry on inconsistent geometry.
  void validate() const;
  /// True when layer_spacing exceeds the compact-design bound of 50 wavelengths.
  bool spacing_exceeds_recommended() const noexcept;

  bool operator==(const NetworkConfig&) const = default;
};

/// A NetworkConfig with its propagation plans built. Read-only; share it
/// across threads.
class OpticalPath {
 public:
  explicit OpticalPath(NetworkConfig config);

  const NetworkConfig& config() const noexcept { return config_; }
  /// Plan for gap i (0 = input -> first layer).
  const PropagationPlan& gap(std::size_t i) const { return *plans_.at(i); }
  std::size_t num_gaps() const noexcept { return plans_.size(); }

 private:
  NetworkConfig config_;
  std::vector<std::shared_ptr<const PropagationPlan>> plans_;
};

struct ForwardTrace {
  /// Field arriving at each layer, before modulation.
  std::vector<Wavefield> pre_layer_fields;
  Wavefield output_field{2, 1.0};
  Signals detector_signals{};
  double total_output_power = 0.0;
};

/// Amplitude: E = image. Phase: E = exp(i * pi * image).
/// Throws kInvalidInput when a pixel lies outside [0,1].
Wavefield encode_input(const RealGrid& image, Encoding mode, double pitch);

ForwardTrace forward(const OpticalPath& path, std::span<const DiffractiveLayer> layers,
                     const Wavefield& input);
ForwardTrace forward(const NetworkConfig& config, std::span<const DiffractiveLayer> layers,
                     const Wavefield& input);

/// Dense row-major complex matrix.
struct ComplexMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<Complex> data;

  Complex& operator()(int r, int c) { return data[static_cast<std::size_t>(r) * cols + c]; }
  const Complex& operator()(int r, int c) const {
    return data[static_cast<std::size_t>(r) * cols + c];
  }
  std::vector<Complex> apply(std::span<const Complex> x) const;
};

inline constexpr int kSqueezeMaxGrid = 32;

/// The whole linear network as one n^2 x n^2 transfer matrix acting on the
/// row-major flattened input field. Column j is the output for the j-th
/// unit-impulse input. Throws kUnsupported for nonlinear configs and
/// kCostGuard above kSqueezeMaxGrid.
ComplexMatrix squeeze_to_matrix(const NetworkConfig& config,
                                std::span<const DiffractiveLayer> layers);

}  // namespace d2nn
