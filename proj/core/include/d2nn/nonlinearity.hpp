#pragma once

#include "d2nn/wavefield.hpp"

namespace d2nn {

enum class NonlinearKind { kLinear, kKerr, kSaturableAbsorber };

/// Thin-element intensity-dependent response applied right after a layer.
///
/// Kerr: out = E * exp(i * kerr_gamma * |E|^2). kerr_gamma lumps the
/// third-order susceptibility, the interaction length and unit conversions
/// into one phase-per-intensity coefficient.
///
/// Saturable absorber: power transmission
///   T(I) = sa_t_min + (sa_t_max - sa_t_min) * I / (I + sa_i_sat)
/// and out = E * sqrt(T(|E|^2)).
struct NonlinearSpec {
  NonlinearKind kind = NonlinearKind::kLinear;
  double kerr_gamma = 0.0;
  double sa_t_min = 0.0;
  double sa_t_max = 1.0;
  double sa_i_sat = 1.0;

  static NonlinearSpec linear() { return {}; }
  static NonlinearSpec kerr(double gamma);
  static NonlinearSpec saturable_absorber(double t_min, double t_max, double i_sat);

  bool is_linear() const noexcept { return kind == NonlinearKind::kLinear; }

  /// Throws kInvalidArgument when the numeric fields violate their ranges.
  /// Linear specs are always valid.
  void validate() const;

  bool operator==(const NonlinearSpec&) const = default;
};

/// Power transmission of the saturable absorber at intensity `intensity`.
double saturable_transmission(const NonlinearSpec& spec, double intensity);

Wavefield apply_nonlinearity(const Wavefield& field, const NonlinearSpec& spec);

}  // namespace d2nn
