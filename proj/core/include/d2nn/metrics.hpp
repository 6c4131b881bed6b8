#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "d2nn/dataset.hpp"
#include "d2nn/network.hpp"

namespace d2nn {

/// Fraction of output-plane power landing on the target detector.
/// kDegenerateOutput when total <= 0.
double power_efficiency(const Signals& signals, double total, int target);

/// (target signal - strongest competitor) / total.
double signal_contrast(const Signals& signals, double total, int target);

struct SampleMetrics {
  bool correct = false;
  double power_efficiency = 0.0;
  double signal_contrast = 0.0;
};

SampleMetrics sample_metrics(const Signals& signals, double total, int label);

/// One row of a run report. Means are taken over every evaluated sample,
/// correct or not.
struct ReportRow {
  std::string dataset;
  std::string variant;
  int num_layers = 0;
  double epsilon = 0.0;
  std::size_t n_samples = 0;
  std::size_t n_correct = 0;
  double accuracy = 0.0;
  double mean_efficiency = 0.0;
  double mean_contrast = 0.0;
  std::uint64_t seed = 0;
  std::string config_digest;
  /// Perturbation sweeps only: mean achieved L2 distance to the clean input.
  double mean_achieved_distance = 0.0;

  bool operator==(const ReportRow&) const = default;
};

struct RunReport {
  std::vector<ReportRow> rows;

  /// `dataset,variant,num_layers,epsilon,n_samples,accuracy,mean_efficiency,
  /// mean_contrast,seed,config_digest`, floats with 17 significant digits.
  std::string to_csv() const;
  bool operator==(const RunReport&) const = default;
};

/// Evaluates a network on data[indices] with unmodified inputs.
/// kEmptySplit when indices is empty.
ReportRow evaluate(const OpticalPath& path, std::span<const DiffractiveLayer> layers,
                   const Dataset& data, std::span<const std::size_t> indices, int threads = 0);

/// Per-sample metrics for inputs supplied as images (already on the grid).
std::vector<SampleMetrics> evaluate_images(const OpticalPath& path,
                                           std::span<const DiffractiveLayer> layers,
                                           std::span<const RealGrid> images,
                                           std::span<const int> labels, int threads = 0);

/// Aggregates per-sample metrics into a row (dataset/variant/seed left blank).
ReportRow summarize(std::span<const SampleMetrics> samples);

/// `x<TAB>y` lines, 17 significant digits.
std::string plot_series(std::span<const std::pair<double, double>> points);

}  // namespace d2nn
