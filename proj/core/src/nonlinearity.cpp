#include "d2nn/nonlinearity.hpp"

#include <cmath>

namespace d2nn {

NonlinearSpec NonlinearSpec::kerr(double gamma) {
  NonlinearSpec s;
  s.kind = NonlinearKind::kKerr;
  s.kerr_gamma = gamma;
  s.validate();
  return s;
}

NonlinearSpec NonlinearSpec::saturable_absorber(double t_min, double t_max, double i_sat) {
  NonlinearSpec s;
  s.kind = NonlinearKind::kSaturableAbsorber;
  s.sa_t_min = t_min;
  s.sa_t_max = t_max;
  s.sa_i_sat = i_sat;
  s.validate();
  return s;
}

void NonlinearSpec::validate() const {
  switch (kind) {
    case NonlinearKind::kLinear:
      return;
    case NonlinearKind::kKerr:
      if (!(kerr_gamma >= 0.0) || !std::isfinite(kerr_gamma)) {
        throw Error(ErrorCode::kInvalidArgument, "kerr_gamma must be finite and >= 0");
      }
      return;
    case NonlinearKind::kSaturableAbsorber:
      if (!(sa_t_min >= 0.0 && sa_t_min <= 1.0)) {
        throw Error(ErrorCode::kInvalidArgument, "sa_t_min must lie in [0,1]");
      }
      if (!(sa_t_max >= sa_t_min && sa_t_max <= 1.0)) {
        throw Error(ErrorCode::kInvalidArgument, "sa_t_max must lie in [sa_t_min,1]");
      }
      if (!(sa_i_sat > 0.0) || !std::isfinite(sa_i_sat)) {
        throw Error(ErrorCode::kInvalidArgument, "sa_i_sat must be positive");
      }
      return;
  }
}

double saturable_transmission(const NonlinearSpec& spec, double intensity) {
  return spec.sa_t_min + (spec.sa_t_max - spec.sa_t_min) * intensity / (intensity + spec.sa_i_sat);
}

Wavefield apply_nonlinearity(const Wavefield& field, const NonlinearSpec& spec) {
  spec.validate();
  Wavefield out = field;
  switch (spec.kind) {
    case NonlinearKind::kLinear:
      break;
    case NonlinearKind::kKerr:
      if (spec.kerr_gamma == 0.0) break;
      for (Complex& v : out.values()) v *= std::polar(1.0, spec.kerr_gamma * std::norm(v));
      break;
    case NonlinearKind::kSaturableAbsorber:
      for (Complex& v : out.values()) v *= std::sqrt(saturable_transmission(spec, std::norm(v)));
      break;
  }
  return out;
}

}  // namespace d2nn
