#include <benchmark/benchmark.h>

#include <random>

#include "dfcast/eval/metrics.hpp"
#include "dfcast/experiments/spearman.hpp"
#include "dfcast/pipeline/windows.hpp"

using namespace dfcast;

static void BM_MakeWindows(benchmark::State& state) {
  const Eigen::Index rows = state.range(0);
  const Eigen::MatrixXd in = Eigen::MatrixXd::Random(rows, 12);
  const Eigen::VectorXd y = Eigen::VectorXd::Random(rows);
  for (auto _ : state) benchmark::DoNotOptimize(pipeline::make_windows(in, y, 36, 6));
}
BENCHMARK(BM_MakeWindows)->Arg(760);

static void BM_Mmape(benchmark::State& state) {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(0, 50);
  std::vector<double> f(static_cast<std::size_t>(state.range(0))), a(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = u(rng), a[i] = u(rng);
  for (auto _ : state) benchmark::DoNotOptimize(eval::mmape(f, a));
}
BENCHMARK(BM_Mmape)->Arg(60)->Arg(6000);

static void BM_Spearman(benchmark::State& state) {
  std::mt19937_64 rng(7);
  std::poisson_distribution<int> p(20);
  std::vector<double> a(static_cast<std::size_t>(state.range(0))), b(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = p(rng), b[i] = p(rng);
  for (auto _ : state) benchmark::DoNotOptimize(experiments::spearman(a, b));
}
BENCHMARK(BM_Spearman)->Arg(620);
