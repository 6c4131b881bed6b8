#include <benchmark/benchmark.h>

#include "d2nn/dataset.hpp"
#include "d2nn/gradients.hpp"
#include "d2nn/training.hpp"

namespace {

// One training sample: forward pass, loss, adjoint pass.
void BM_SampleGradient(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int depth = static_cast<int>(state.range(1));
  auto cfg = d2nn::NetworkConfig::with_grid(n);
  cfg.num_layers = depth;
  const d2nn::OpticalPath path(cfg);
  const auto layers = d2nn::init_layers(depth, n, 7);
  const auto data = d2nn::synthetic_two_blob(2, n, 7);
  const auto input = d2nn::encode_input(data.images[0], cfg.encoding, cfg.pitch);
  for (auto _ : state) {
    const auto trace = d2nn::forward(path, layers, input);
    const auto lg = d2nn::mse_loss(trace.detector_signals, trace.total_output_power, 0);
    const auto seed = d2nn::intensity_seed(cfg.detectors, n, lg.d_signals, lg.d_total);
    auto grads = d2nn::backward(path, layers, trace, seed);
    benchmark::DoNotOptimize(grads.data());
  }
}
BENCHMARK(BM_SampleGradient)
    ->Args({32, 1})
    ->Args({64, 1})
    ->Args({64, 3})
    ->Args({64, 5})
    ->Unit(benchmark::kMicrosecond);

}  // namespace
