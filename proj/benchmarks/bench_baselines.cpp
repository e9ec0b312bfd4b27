#include <benchmark/benchmark.h>

#include <random>

#include "dfcast/baselines/ets.hpp"
#include "dfcast/baselines/forest.hpp"
#include "dfcast/baselines/lasso.hpp"
#include "dfcast/baselines/median.hpp"

using namespace dfcast::baselines;

namespace {

std::vector<double> history(std::size_t n) {
  std::mt19937_64 rng(3);
  std::poisson_distribution<int> p(25);
  std::vector<double> out(n);
  for (auto& v : out) v = p(rng);
  return out;
}

void design(Eigen::Index rows, Eigen::Index cols, Eigen::MatrixXd& x, Eigen::VectorXd& y) {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> n01;
  x = Eigen::MatrixXd::NullaryExpr(rows, cols, [&] { return n01(rng); });
  y = x.col(0) * 2.0 - x.col(1) + Eigen::VectorXd::NullaryExpr(rows, [&] { return n01(rng); });
}

}  // namespace

static void BM_EtsAlphaSelection(benchmark::State& state) {
  const auto h = history(800);
  std::vector<std::size_t> origins;
  for (std::size_t o = 620; o < 690; ++o) origins.push_back(o);
  for (auto _ : state) benchmark::DoNotOptimize(select_ets_alpha(h, origins));
}
BENCHMARK(BM_EtsAlphaSelection);

static void BM_Mdpq(benchmark::State& state) {
  const auto h = history(800);
  std::vector<std::size_t> wd(h.size());
  for (std::size_t i = 0; i < wd.size(); ++i) wd[i] = i % 6;
  const std::vector<std::size_t> targets{0, 1, 2, 3, 4, 5};
  for (auto _ : state) benchmark::DoNotOptimize(mdpq_forecast(h, wd, 700, targets));
}
BENCHMARK(BM_Mdpq);

static void BM_LassoFit(benchmark::State& state) {
  Eigen::MatrixXd x;
  Eigen::VectorXd y;
  design(600, state.range(0), x, y);
  for (auto _ : state) benchmark::DoNotOptimize(LassoRegressor::train(x, y, 1e-2));
}
BENCHMARK(BM_LassoFit)->Arg(12)->Arg(144)->Unit(benchmark::kMillisecond);

static void BM_ForestFit(benchmark::State& state) {
  Eigen::MatrixXd x;
  Eigen::VectorXd y;
  design(600, 144, x, y);
  for (auto _ : state) {
    std::mt19937_64 rng(5);
    benchmark::DoNotOptimize(rf_fit(x, y, static_cast<std::size_t>(state.range(0)), rng));
  }
}
BENCHMARK(BM_ForestFit)->Arg(10)->Arg(100)->Unit(benchmark::kMillisecond);
