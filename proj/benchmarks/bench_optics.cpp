#include <benchmark/benchmark.h>

#include "d2nn/network.hpp"
#include "d2nn/propagation.hpp"
#include "d2nn/random.hpp"

namespace {

d2nn::Wavefield random_field(int n, std::uint64_t seed) {
  d2nn::Rng rng(seed);
  d2nn::Wavefield f(n, 0.5);
  for (auto& v : f.values()) v = {rng.uniform(-1, 1), rng.uniform(-1, 1)};
  return f;
}

void BM_MakePlan(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    d2nn::PropagationPlan plan(n, 0.5, 40.0);
    benchmark::DoNotOptimize(plan.transfer().data());
  }
}
BENCHMARK(BM_MakePlan)->Arg(32)->Arg(64)->Arg(128);

void BM_Propagate(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const d2nn::PropagationPlan plan(n, 0.5, 40.0);
  const d2nn::Wavefield field = random_field(n, 1);
  for (auto _ : state) {
    auto out = plan.propagate(field);
    benchmark::DoNotOptimize(out.values().data());
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_Propagate)->Arg(16)->Arg(32)->Arg(64)->Arg(128);

void BM_SqueezeToMatrix(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto cfg = d2nn::NetworkConfig::with_grid(n);
  cfg.num_layers = 3;
  d2nn::Rng rng(3);
  std::vector<d2nn::DiffractiveLayer> layers;
  for (int i = 0; i < 3; ++i) layers.push_back(d2nn::DiffractiveLayer::random_phase(n, rng));
  for (auto _ : state) {
    auto m = d2nn::squeeze_to_matrix(cfg, layers);
    benchmark::DoNotOptimize(m.data.data());
  }
}
BENCHMARK(BM_SqueezeToMatrix)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

}  // namespace
