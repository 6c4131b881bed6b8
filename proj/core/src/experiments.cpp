#include "d2nn/experiments.hpp"

#include <algorithm>
#include <cmath>

#include "bytes.hpp"
#include "parallel.hpp"

namespace d2nn {

std::string config_digest(const NetworkConfig& config, const TrainConfig& tc) {
  detail::ByteWriter w;
  w.bytes(encode_config(config));
  w.i32(tc.epochs);
  w.i32(tc.batch_size);
  w.f64(tc.learning_rate);
  w.u8(static_cast<std::uint8_t>(tc.optimizer));
  w.u64(tc.seed);
  w.u8(static_cast<std::uint8_t>(tc.loss));
  return hex64(fnv1a64(w.str()));
}

DepthSweepResult depth_sweep(const NetworkConfig& base, std::span<const int> depths,
                             std::span<const ExperimentData> datasets, const TrainConfig& tc) {
  if (depths.empty()) throw Error(ErrorCode::kInvalidArgument, "depth list is empty");
  DepthSweepResult result;
  for (const ExperimentData& exp : datasets) {
    if (exp.data == nullptr) throw Error(ErrorCode::kInvalidArgument, "missing dataset");
    for (int depth : depths) {
      if (depth < 1) throw Error(ErrorCode::kInvalidArgument, "depths must be >= 1");
      NetworkConfig cfg = base;
      cfg.num_layers = depth;
      cfg.gap_override.clear();
      TrainResult trained = train(cfg, init_layers(depth, cfg.grid_n, tc.seed), *exp.data,
                                  exp.splits.train, exp.splits.val, tc);
      const OpticalPath path(cfg);
      ReportRow row = evaluate(path, trained.layers, *exp.data, exp.splits.test, tc.threads);
      row.variant = "depth";
      row.seed = tc.seed;
      row.config_digest = config_digest(cfg, tc);
      result.report.rows.push_back(row);
      result.runs.push_back({exp.data->name, NetworkModel{cfg, std::move(trained.layers)},
                             std::move(trained.history), row});
    }
  }
  return result;
}

PerturbedImage perturb_image(const RealGrid& image, double epsilon, std::uint64_t seed) {
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
    throw Error(ErrorCode::kInvalidArgument, "epsilon must be finite and >= 0");
  }
  PerturbedImage out{image, 0.0, 0};
  if (epsilon == 0.0) return out;

  Rng rng(seed);
  std::vector<double> noise(image.size());
  double norm2 = 0.0;
  for (double& v : noise) {
    v = rng.normal();
    norm2 += v * v;
  }
  const double scale = epsilon / std::sqrt(norm2);
  double achieved2 = 0.0;
  for (std::size_t p = 0; p < image.size(); ++p) {
    const double raw = image[p] + scale * noise[p];
    const double clamped = std::clamp(raw, 0.0, 1.0);
    if (clamped != raw) ++out.clamped_pixels;
    out.image[p] = clamped;
    const double d = clamped - image[p];
    achieved2 += d * d;
  }
  out.achieved_distance = std::sqrt(achieved2);
  return out;
}

RunReport perturbation_sweep(const NetworkModel& model, const Dataset& data,
                             std::span<const std::size_t> indices,
                             std::span<const double> epsilons, std::uint64_t seed, int threads) {
  if (epsilons.empty() || epsilons.front() != 0.0) {
    throw Error(ErrorCode::kInvalidArgument, "epsilons must start at 0");
  }
  for (std::size_t k = 0; k < epsilons.size(); ++k) {
    if (!(epsilons[k] >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "negative epsilon");
    if (k > 0 && epsilons[k] < epsilons[k - 1]) {
      throw Error(ErrorCode::kInvalidArgument, "epsilons must be ascending");
    }
  }
  if (indices.empty()) throw Error(ErrorCode::kEmptySplit, "perturbation subset is empty");

  const OpticalPath path(model.config);
  const int workers = detail::resolve_threads(threads);
  std::vector<int> labels;
  labels.reserve(indices.size());
  for (std::size_t i : indices) labels.push_back(data.labels.at(i));

  RunReport report;
  for (double eps : epsilons) {
    std::vector<RealGrid> images(indices.size());
    std::vector<double> achieved(indices.size());
    detail::parallel_for(indices.size(), workers, [&](std::size_t k) {
      PerturbedImage p = perturb_image(data.images.at(indices[k]), eps, mix_seed(seed, k));
      images[k] = std::move(p.image);
      achieved[k] = p.achieved_distance;
    });
    ReportRow row = summarize(evaluate_images(path, model.layers, images, labels, workers));
    double dist = 0.0;
    for (double a : achieved) dist += a;
    row.mean_achieved_distance = dist / static_cast<double>(achieved.size());
    row.dataset = data.name;
    row.variant = "perturb";
    row.num_layers = model.config.num_layers;
    row.epsilon = eps;
    row.seed = seed;
    report.rows.push_back(std::move(row));
  }
  return report;
}

LegoComparison lego_comparison(const NetworkModel& frozen, const ExperimentData& experiment,
                               const LegoOptions& options, const TrainConfig& tc) {
  if (experiment.data == nullptr) throw Error(ErrorCode::kInvalidArgument, "missing dataset");
  const Dataset& data = *experiment.data;
  LegoComparison out;

  ReportRow base = evaluate(OpticalPath(frozen.config), frozen.layers, data,
                            experiment.splits.test, tc.threads);
  base.variant = "frozen";
  base.seed = tc.seed;
  base.config_digest = config_digest(frozen.config, tc);
  out.report.rows.push_back(base);

  out.patched = lego_patch(frozen, options, data, experiment.splits.train, experiment.splits.val, tc);
  ReportRow patched = evaluate(OpticalPath(out.patched.model.config), out.patched.model.layers,
                               data, experiment.splits.test, tc.threads);
  patched.variant = "patched";
  patched.seed = tc.seed;
  patched.config_digest = config_digest(out.patched.model.config, tc);
  out.report.rows.push_back(patched);
  return out;
}

}  // namespace d2nn
