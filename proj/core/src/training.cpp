#include "d2nn/training.hpp"

#include <cstdio>

#include "parallel.hpp"

namespace d2nn {

void TrainConfig::validate() const {
  if (epochs < 0) throw Error(ErrorCode::kInvalidArgument, "epochs must be >= 0");
  if (batch_size < 1) throw Error(ErrorCode::kInvalidArgument, "batch_size must be >= 1");
  if (!(learning_rate > 0.0)) throw Error(ErrorCode::kInvalidArgument, "learning_rate must be > 0");
  if (threads < 0) throw Error(ErrorCode::kInvalidArgument, "threads must be >= 0");
}

std::string TrainHistory::to_csv() const {
  std::string out = "epoch,split,loss,accuracy\n";
  char buf[128];
  for (const EpochRecord& r : records) {
    std::snprintf(buf, sizeof buf, "%d,%s,%.17g,%.17g\n", r.epoch, r.split.c_str(), r.loss,
                  r.accuracy);
    out += buf;
  }
  return out;
}

std::vector<DiffractiveLayer> init_layers(int count, int grid_n, std::uint64_t seed) {
  Rng rng(mix_seed(seed, 0x1a7e5));
  std::vector<DiffractiveLayer> layers;
  layers.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) layers.push_back(DiffractiveLayer::random_phase(grid_n, rng));
  return layers;
}

namespace {

struct SampleResult {
  double loss = 0.0;
  bool correct = false;
  GradientSet grads;
};

Wavefield encode_sample(const NetworkConfig& cfg, const Dataset& data, std::size_t idx) {
  if (idx >= data.size()) throw Error(ErrorCode::kInvalidArgument, "sample index out of range");
  return encode_input(data.images[idx], cfg.encoding, cfg.pitch);
}

SampleResult run_sample(const OpticalPath& path, std::span<const DiffractiveLayer> layers,
                        const Dataset& data, std::size_t idx, bool with_gradient) {
  const NetworkConfig& cfg = path.config();
  const ForwardTrace trace = forward(path, layers, encode_sample(cfg, data, idx));
  SampleResult out;
  LossGrad lg;
  try {
    lg = mse_loss(trace.detector_signals, trace.total_output_power, data.labels[idx]);
  } catch (const Error& e) {
    throw Error(e.code(), "sample " + std::to_string(idx) + ": " + e.message());
  }
  out.loss = lg.loss;
  out.correct = classify(trace.detector_signals) == data.labels[idx];
  if (with_gradient) {
    const RealGrid seed = intensity_seed(cfg.detectors, cfg.grid_n, lg.d_signals, lg.d_total);
    out.grads = backward(path, layers, trace, seed);
  }
  return out;
}

}  // namespace

LossAccuracy evaluate_loss(const OpticalPath& path, std::span<const DiffractiveLayer> layers,
                           const Dataset& data, std::span<const std::size_t> indices,
                           int threads) {
  if (indices.empty()) throw Error(ErrorCode::kEmptySplit, "cannot evaluate an empty split");
  std::vector<SampleResult> results(indices.size());
  detail::parallel_for(indices.size(), detail::resolve_threads(threads), [&](std::size_t k) {
    results[k] = run_sample(path, layers, data, indices[k], false);
  });
  LossAccuracy la;
  std::size_t correct = 0;
  for (const SampleResult& r : results) {
    la.loss += r.loss;
    correct += r.correct ? 1 : 0;
  }
  la.loss /= static_cast<double>(indices.size());
  la.accuracy = static_cast<double>(correct) / static_cast<double>(indices.size());
  return la;
}

TrainResult train(const NetworkConfig& config, std::vector<DiffractiveLayer> layers,
                  const Dataset& data, std::span<const std::size_t> train_idx,
                  std::span<const std::size_t> val_idx, const TrainConfig& tc) {
  tc.validate();
  if (!config.nonlinearity.is_linear()) {
    throw Error(ErrorCode::kUnsupported,
                "training nonlinear networks is not supported (inference-only)");
  }
  if (train_idx.empty()) throw Error(ErrorCode::kEmptySplit, "training split is empty");
  if (data.grid_n() != config.grid_n) {
    throw Error(ErrorCode::kInvalidGeometry, "dataset grid " + std::to_string(data.grid_n()) +
                                                 " does not match network grid " +
                                                 std::to_string(config.grid_n));
  }
  for (const DiffractiveLayer& layer : layers) layer.validate(config.grid_n);

  const OpticalPath path(config);
  const int threads = detail::resolve_threads(tc.threads);
  Optimizer optimizer(OptimizerSettings{tc.optimizer, tc.learning_rate});
  TrainResult result;

  for (int epoch = 0; epoch < tc.epochs; ++epoch) {
    double loss_sum = 0.0;
    std::size_t correct = 0;
    for (const Batch& batch : epoch_batches(train_idx, tc.batch_size, tc.seed, epoch)) {
      std::vector<SampleResult> slots(batch.size());
      detail::parallel_for(batch.size(), threads, [&](std::size_t k) {
        slots[k] = run_sample(path, layers, data, batch[k], true);
      });

      GradientSet mean = std::move(slots.front().grads);
      for (std::size_t k = 1; k < slots.size(); ++k) {
        for (std::size_t l = 0; l < mean.size(); ++l) {
          auto dst = mean[l].d_theta.values();
          const auto src = slots[k].grads[l].d_theta.values();
          for (std::size_t p = 0; p < dst.size(); ++p) dst[p] += src[p];
          auto dst_a = mean[l].d_amp.values();
          const auto src_a = slots[k].grads[l].d_amp.values();
          for (std::size_t p = 0; p < dst_a.size(); ++p) dst_a[p] += src_a[p];
        }
      }
      const double inv = 1.0 / static_cast<double>(slots.size());
      for (LayerGradient& g : mean) {
        for (double& v : g.d_theta.values()) v *= inv;
        for (double& v : g.d_amp.values()) v *= inv;
      }
      mask_frozen(mean, layers);
      optimizer.step(layers, mean);

      for (const SampleResult& s : slots) {
        loss_sum += s.loss;
        correct += s.correct ? 1 : 0;
      }
    }
    const double n = static_cast<double>(train_idx.size());
    result.history.records.push_back({epoch + 1, "train", loss_sum / n, correct / n});
    if (!val_idx.empty()) {
      const LossAccuracy la = evaluate_loss(path, layers, data, val_idx, threads);
      result.history.records.push_back({epoch + 1, "val", la.loss, la.accuracy});
    }
  }
  result.layers = std::move(layers);
  return result;
}

}  // namespace d2nn
