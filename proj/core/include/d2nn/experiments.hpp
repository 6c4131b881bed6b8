#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "d2nn/metrics.hpp"
#include "d2nn/training.hpp"

namespace d2nn {

/// A dataset (already on the network grid) with its split indices.
struct ExperimentData {
  const Dataset* data = nullptr;
  Splits splits;
};

/// Digest of everything that determines a trained result besides the data.
std::string config_digest(const NetworkConfig& config, const TrainConfig& tc);

struct DepthRun {
  std::string dataset;
  NetworkModel model;
  TrainHistory history;
  ReportRow row;
};

struct DepthSweepResult {
  RunReport report;
  std::vector<DepthRun> runs;  // dataset-major, depth-minor
};

/// Trains and evaluates one network per (dataset, depth). Everything but
/// num_layers is shared: geometry, budget, and the seed, which also drives
/// layer initialization.
DepthSweepResult depth_sweep(const NetworkConfig& base, std::span<const int> depths,
                             std::span<const ExperimentData> datasets, const TrainConfig& tc);

struct PerturbedImage {
  RealGrid image;
  double achieved_distance = 0.0;
  std::size_t clamped_pixels = 0;
};

/// Adds Gaussian noise rescaled to L2 norm `epsilon`, then clamps to [0,1].
/// The noise direction depends only on `seed`, so one seed traces a ray
/// through image space as epsilon grows.
PerturbedImage perturb_image(const RealGrid& image, double epsilon, std::uint64_t seed);

/// Accuracy under L2 input perturbations. epsilons must be ascending,
/// non-negative and start at 0 (kInvalidArgument otherwise). Sample k of
/// the subset uses noise seed mix_seed(seed, k) at every epsilon. Each row
/// records the requested epsilon and the mean achieved distance.
RunReport perturbation_sweep(const NetworkModel& model, const Dataset& data,
                             std::span<const std::size_t> indices,
                             std::span<const double> epsilons, std::uint64_t seed,
                             int threads = 0);

struct LegoComparison {
  RunReport report;  // rows: "frozen", "patched"
  LegoResult patched;
};

/// Evaluates the frozen network, patches it, and evaluates the patched
/// network on the same test split.
LegoComparison lego_comparison(const NetworkModel& frozen, const ExperimentData& experiment,
                               const LegoOptions& options, const TrainConfig& tc);

}  // namespace d2nn
