#include "d2nn/metrics.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include "parallel.hpp"

namespace d2nn {
namespace {

void check(double total, int target) {
  if (!(total > 0.0) || !std::isfinite(total)) {
    throw Error(ErrorCode::kDegenerateOutput, "output-plane power is " + std::to_string(total));
  }
  if (target < 0 || target >= kNumClasses) {
    throw Error(ErrorCode::kInvalidArgument, "target class out of range");
  }
}

}  // namespace

double power_efficiency(const Signals& signals, double total, int target) {
  check(total, target);
  return signals[target] / total;
}

double signal_contrast(const Signals& signals, double total, int target) {
  check(total, target);
  double competitor = -std::numeric_limits<double>::infinity();
  for (int c = 0; c < kNumClasses; ++c) {
    if (c != target && signals[c] > competitor) competitor = signals[c];
  }
  return (signals[target] - competitor) / total;
}

SampleMetrics sample_metrics(const Signals& signals, double total, int label) {
  return {classify(signals) == label, power_efficiency(signals, total, label),
          signal_contrast(signals, total, label)};
}

std::string RunReport::to_csv() const {
  std::string out =
      "dataset,variant,num_layers,epsilon,n_samples,accuracy,mean_efficiency,mean_contrast,seed,"
      "config_digest\n";
  char buf[256];
  for (const ReportRow& r : rows) {
    std::snprintf(buf, sizeof buf, ",%d,%.17g,%zu,%.17g,%.17g,%.17g,%llu,", r.num_layers,
                  r.epsilon, r.n_samples, r.accuracy, r.mean_efficiency, r.mean_contrast,
                  static_cast<unsigned long long>(r.seed));
    out += r.dataset;
    out += ',';
    out += r.variant;
    out += buf;
    out += r.config_digest;
    out += '\n';
  }
  return out;
}

std::vector<SampleMetrics> evaluate_images(const OpticalPath& path,
                                           std::span<const DiffractiveLayer> layers,
                                           std::span<const RealGrid> images,
                                           std::span<const int> labels, int threads) {
  if (images.size() != labels.size()) {
    throw Error(ErrorCode::kConsistency, "image and label counts differ");
  }
  if (images.empty()) throw Error(ErrorCode::kEmptySplit, "cannot evaluate an empty split");
  const NetworkConfig& cfg = path.config();
  std::vector<SampleMetrics> out(images.size());
  detail::parallel_for(images.size(), detail::resolve_threads(threads), [&](std::size_t k) {
    const ForwardTrace trace =
        forward(path, layers, encode_input(images[k], cfg.encoding, cfg.pitch));
    try {
      out[k] = sample_metrics(trace.detector_signals, trace.total_output_power, labels[k]);
    } catch (const Error& e) {
      throw Error(e.code(), "sample " + std::to_string(k) + ": " + e.message());
    }
  });
  return out;
}

ReportRow evaluate(const OpticalPath& path, std::span<const DiffractiveLayer> layers,
                   const Dataset& data, std::span<const std::size_t> indices, int threads) {
  if (indices.empty()) throw Error(ErrorCode::kEmptySplit, "cannot evaluate an empty split");
  std::vector<RealGrid> images;
  std::vector<int> labels;
  images.reserve(indices.size());
  labels.reserve(indices.size());
  for (std::size_t i : indices) {
    images.push_back(data.images.at(i));
    labels.push_back(data.labels.at(i));
  }
  ReportRow row = summarize(evaluate_images(path, layers, images, labels, threads));
  row.dataset = data.name;
  row.num_layers = path.config().num_layers;
  return row;
}

ReportRow summarize(std::span<const SampleMetrics> samples) {
  ReportRow row;
  row.n_samples = samples.size();
  for (const SampleMetrics& s : samples) {
    row.n_correct += s.correct ? 1 : 0;
    row.mean_efficiency += s.power_efficiency;
    row.mean_contrast += s.signal_contrast;
  }
  if (!samples.empty()) {
    const double n = static_cast<double>(samples.size());
    row.accuracy = static_cast<double>(row.n_correct) / n;
    row.mean_efficiency /= n;
    row.mean_contrast /= n;
  }
  return row;
}

std::string plot_series(std::span<const std::pair<double, double>> points) {
  std::string out;
  char buf[96];
  for (const auto& [x, y] : points) {
    std::snprintf(buf, sizeof buf, "%.17g\t%.17g\n", x, y);
    out += buf;
  }
  return out;
}

}  // namespace d2nn
