#include <string>

#include "d2nn/gradients.hpp"

namespace d2nn {

GradientSet backward(const OpticalPath& path, std::span<const DiffractiveLayer> layers,
                     const ForwardTrace& trace, const RealGrid& output_intensity_grad) {
  const NetworkConfig& cfg = path.config();
  if (!cfg.nonlinearity.is_linear()) {
    throw Error(ErrorCode::kUnsupported,
                "gradients through Kerr or saturable-absorber layers are not implemented; "
                "nonlinear networks are inference-only");
  }
  if (layers.size() != static_cast<std::size_t>(cfg.num_layers) ||
      trace.pre_layer_fields.size() != layers.size()) {
    throw Error(ErrorCode::kInvalidGeometry, "trace does not match the layer stack");
  }
  if (output_intensity_grad.n() != cfg.grid_n || trace.output_field.grid_n() != cfg.grid_n) {
    throw Error(ErrorCode::kInvalidGeometry, "intensity gradient does not match the grid");
  }

  Wavefield adjoint = trace.output_field;
  {
    auto a = adjoint.values();
    for (std::size_t p = 0; p < a.size(); ++p) a[p] *= output_intensity_grad[p];
  }

  GradientSet grads(layers.size());
  for (std::size_t i = layers.size(); i-- > 0;) {
    adjoint = path.gap(i + 1).propagate_adjoint(adjoint);
    const DiffractiveLayer& layer = layers[i];
    const auto u = trace.pre_layer_fields[i].values();
    auto a = adjoint.values();
    LayerGradient g{RealGrid(cfg.grid_n, 0.0), RealGrid(cfg.grid_n, 0.0)};
    for (std::size_t p = 0; p < a.size(); ++p) {
      const Complex phasor = std::polar(1.0, layer.theta[p]);
      const Complex t = layer.amp[p] * phasor;
      g.d_theta[p] = 2.0 * (a[p] * std::conj(t * u[p])).imag();
      g.d_amp[p] = 2.0 * (std::conj(a[p]) * phasor * u[p]).real();
      a[p] *= std::conj(t);
    }
    grads[i] = std::move(g);
  }
  return grads;
}

void mask_frozen(GradientSet& grads, std::span<const DiffractiveLayer> layers) {
  for (std::size_t i = 0; i < grads.size() && i < layers.size(); ++i) {
    if (layers[i].trainable) continue;
    for (double& v : grads[i].d_theta.values()) v = 0.0;
    for (double& v : grads[i].d_amp.values()) v = 0.0;
  }
}

}  // namespace d2nn
