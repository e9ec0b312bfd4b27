#include <benchmark/benchmark.h>

#include <numeric>
#include <random>

#include "dfcast/nn/network.hpp"
#include "dfcast/nn/train.hpp"

using namespace dfcast;

namespace {

std::vector<pipeline::WindowedSample> samples(std::size_t n, Eigen::Index features) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0, 1);
  std::vector<pipeline::WindowedSample> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i].input.resize(36, features);
    for (Eigen::Index j = 0; j < out[i].input.size(); ++j) out[i].input.data()[j] = u(rng);
    out[i].target = Eigen::VectorXd::NullaryExpr(6, [&] { return u(rng); });
    out[i].origin = i + 35;
  }
  return out;
}

nn::Parameters model(int hidden, Eigen::Index features) {
  nn::ModelConfig c;
  c.lstm_units = hidden;
  c.dense_units = {hidden};
  std::mt19937_64 rng(2);
  return nn::init_parameters(c, features, 6, rng);
}

}  // namespace

static void BM_ForwardBackwardBatch(benchmark::State& state) {
  const int hidden = static_cast<int>(state.range(0));
  const auto data = samples(32, 12);
  const auto params = model(hidden, 12);
  std::vector<std::size_t> idx(32);
  std::iota(idx.begin(), idx.end(), 0);
  const auto steps = nn::stack_inputs(data, idx);
  const Eigen::MatrixXd target = nn::stack_targets(data, idx);
  nn::ForwardCache cache;
  Eigen::MatrixXd d;
  for (auto _ : state) {
    const Eigen::MatrixXd out = nn::forward_batch(params, steps, &cache);
    nn::mse_loss_with_gradient(out, target, d);
    benchmark::DoNotOptimize(nn::backward_batch(params, cache, d));
  }
  state.SetItemsProcessed(state.iterations() * 32);
}
BENCHMARK(BM_ForwardBackwardBatch)->Arg(10)->Arg(50)->Arg(100);

static void BM_Predict(benchmark::State& state) {
  const auto data = samples(static_cast<std::size_t>(state.range(0)), 12);
  const auto params = model(50, 12);
  for (auto _ : state) benchmark::DoNotOptimize(nn::predict(params, data));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Predict)->Arg(60)->Arg(600);

static void BM_TrainEpoch(benchmark::State& state) {
  const auto train = samples(600, 12);
  const auto val = samples(60, 12);
  nn::ModelConfig c;
  c.max_epochs = 1;
  for (auto _ : state) benchmark::DoNotOptimize(nn::train(c, train, val));
}
BENCHMARK(BM_TrainEpoch)->Unit(benchmark::kMillisecond);
