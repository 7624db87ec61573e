#include <benchmark/benchmark.h>

#include "ddosfc/lstm.hpp"
#include "ddosfc/random.hpp"
#include "ddosfc/rmsprop.hpp"

using namespace ddosfc;

namespace {

std::vector<double> window_of(std::size_t w) {
  Rng rng(1);
  std::vector<double> x(w);
  for (auto& v : x) v = rng.uniform(-1, 1);
  return x;
}

void BM_Forward(benchmark::State& state) {
  const auto H = static_cast<std::size_t>(state.range(0));
  const auto W = static_cast<std::size_t>(state.range(1));
  const LstmParams p = init_model(H, 3);
  const auto x = window_of(W);
  ForwardCache cache;
  for (auto _ : state) benchmark::DoNotOptimize(forward(p, x, cache));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(W));
}
BENCHMARK(BM_Forward)->Args({32, 24})->Args({64, 24})->Args({128, 24})->Args({64, 8});

void BM_ForwardBackwardBatch(benchmark::State& state) {
  const auto H = static_cast<std::size_t>(state.range(0));
  constexpr std::size_t kW = 24;
  constexpr std::size_t kBatch = 32;
  const LstmParams p = init_model(H, 3);
  std::vector<ForwardCache> caches(kBatch);
  std::vector<double> targets(kBatch, 0.5);
  const auto x = window_of(kW);
  LstmGradients grads;
  for (auto _ : state) {
    for (auto& c : caches) forward(p, x, c);
    backward(p, caches, targets, grads);
    benchmark::DoNotOptimize(grads.values().data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(kBatch));
}
BENCHMARK(BM_ForwardBackwardBatch)->Arg(32)->Arg(64)->Arg(128);

void BM_RmsProp(benchmark::State& state) {
  LstmParams p = init_model(64, 3);
  LstmGradients g = init_model(64, 4);
  RmsPropState opt = RmsPropState::zeros(p.size());
  for (auto _ : state) {
    rmsprop_update(p, g, opt, 1e-4, 0.9, 1e-7);
    benchmark::ClobberMemory();
  }
}
BENCHMARK(BM_RmsProp);

}  // namespace
