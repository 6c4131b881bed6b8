#include "d2nn/training.hpp"

namespace d2nn {

NetworkModel extend_network(const NetworkModel& frozen, const LegoOptions& options) {
  if (options.num_new_layers < 1) {
    throw Error(ErrorCode::kInvalidArgument, "num_new_layers must be >= 1");
  }
  const NetworkConfig& old_cfg = frozen.config;
  old_cfg.validate();
  if (frozen.layers.size() != static_cast<std::size_t>(old_cfg.num_layers)) {
    throw Error(ErrorCode::kInvalidGeometry, "frozen model layer count disagrees with its config");
  }
  const double extra = options.extra_spacing.value_or(old_cfg.layer_spacing);
  if (!(extra >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "extra_spacing must be >= 0");

  NetworkModel out;
  out.config = old_cfg;
  out.config.num_layers = old_cfg.num_layers + options.num_new_layers;
  std::vector<double> gaps = old_cfg.gaps();
  const std::vector<double> added(static_cast<std::size_t>(options.num_new_layers), extra);
  std::vector<DiffractiveLayer> fresh(static_cast<std::size_t>(options.num_new_layers),
                                      DiffractiveLayer::transparent(old_cfg.grid_n));

  std::vector<DiffractiveLayer> old_layers = frozen.layers;
  for (DiffractiveLayer& layer : old_layers) layer.trainable = false;

  if (options.insert == InsertPosition::kAppend) {
    gaps.insert(gaps.end(), added.begin(), added.end());
    out.layers = std::move(old_layers);
    out.layers.insert(out.layers.end(), fresh.begin(), fresh.end());
  } else {
    gaps.insert(gaps.begin(), added.begin(), added.end());
    out.layers = std::move(fresh);
    out.layers.insert(out.layers.end(), old_layers.begin(), old_layers.end());
  }
  out.config.gap_override = std::move(gaps);
  out.config.validate();
  return out;
}

LegoResult lego_patch(const NetworkModel& frozen, const LegoOptions& options, const Dataset& data,
                      std::span<const std::size_t> train_idx,
                      std::span<const std::size_t> val_idx, const TrainConfig& tc) {
  NetworkModel extended = extend_network(frozen, options);
  TrainResult trained = train(extended.config, std::move(extended.layers), data, train_idx,
                              val_idx, tc);
  return {NetworkModel{extended.config, std::move(trained.layers)}, std::move(trained.history)};
}

}  // namespace d2nn
