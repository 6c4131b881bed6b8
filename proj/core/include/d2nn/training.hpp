#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "d2nn/dataset.hpp"
#include "d2nn/optimizer.hpp"
#include "d2nn/serialization.hpp"

namespace d2nn {

enum class LossKind { kMse };

struct TrainConfig {
  int epochs = 10;
  int batch_size = 32;
  double learning_rate = 1e-3;
  OptimizerKind optimizer = OptimizerKind::kAdam;
  std::uint64_t seed = 0;
  LossKind loss = LossKind::kMse;
  /// Worker threads for per-sample passes; 0 = hardware concurrency.
  /// Results do not depend on this value.
  int threads = 0;

  void validate() const;
};

struct EpochRecord {
  int epoch = 0;
  std::string split;
  double loss = 0.0;
  double accuracy = 0.0;

  bool operator==(const EpochRecord&) const = default;
};

struct TrainHistory {
  std::vector<EpochRecord> records;

  /// `epoch,split,loss,accuracy` with 17 significant digits.
  std::string to_csv() const;
  bool operator==(const TrainHistory&) const = default;
};

struct TrainResult {
  std::vector<DiffractiveLayer> layers;
  TrainHistory history;
};

/// Phase-only layers with theta ~ U[0, 2*pi) drawn from `seed`.
std::vector<DiffractiveLayer> init_layers(int count, int grid_n, std::uint64_t seed);

/// Mini-batch training on data[train_idx]. Each epoch reshuffles the
/// training indices with (tc.seed, epoch); the batch gradient is the mean
/// of per-sample gradients summed in batch order, so results are bitwise
/// reproducible and independent of tc.threads. After every epoch the
/// history gets a `train` row (mean loss and accuracy seen during the
/// epoch) and, when val_idx is non-empty, a `val` row.
///
/// Nonlinear configs throw kUnsupported. A sample with zero output power
/// throws kDegenerateOutput naming the sample index.
TrainResult train(const NetworkConfig& config, std::vector<DiffractiveLayer> layers,
                  const Dataset& data, std::span<const std::size_t> train_idx,
                  std::span<const std::size_t> val_idx, const TrainConfig& tc);

/// Mean loss and accuracy of a network over data[indices].
struct LossAccuracy {
  double loss = 0.0;
  double accuracy = 0.0;
};
LossAccuracy evaluate_loss(const OpticalPath& path, std::span<const DiffractiveLayer> layers,
                           const Dataset& data, std::span<const std::size_t> indices, int threads);

enum class InsertPosition { kAppend, kPrepend };

struct LegoOptions {
  int num_new_layers = 1;
  InsertPosition insert = InsertPosition::kAppend;
  /// Free-space distance added per new layer; defaults to layer_spacing.
  std::optional<double> extra_spacing;
};

/// Extends a trained stack with transparent trainable layers and marks the
/// original layers non-trainable. Appended layers start at the old output
/// plane and push the output plane back by extra_spacing per layer;
/// prepended layers sit before the old first layer in the same way.
NetworkModel extend_network(const NetworkModel& frozen, const LegoOptions& options);

struct LegoResult {
  NetworkModel model;
  TrainHistory history;
};

/// extend_network followed by training of the new layers only. The
/// original layers come back bit-identical.
LegoResult lego_patch(const NetworkModel& frozen, const LegoOptions& options, const Dataset& data,
                      std::span<const std::size_t> train_idx,
                      std::span<const std::size_t> val_idx, const TrainConfig& tc);

}  // namespace d2nn
