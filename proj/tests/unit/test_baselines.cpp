#include <doctest.h>

#include <algorithm>
#include <limits>
#include <numeric>

#include "dfcast/baselines/ets.hpp"
#include "dfcast/baselines/forest.hpp"
#include "dfcast/baselines/lasso.hpp"
#include "dfcast/baselines/median.hpp"
#include "dfcast/baselines/runner.hpp"
#include "dfcast/error.hpp"
#include "dfcast/pipeline/prepare.hpp"
#include "fixtures.hpp"

using namespace dfcast;
using namespace dfcast::baselines;

namespace {

double sort_median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

Split exhaustive_split(const Eigen::MatrixXd& x, const Eigen::VectorXd& y) {
  Split best;
  best.sse = std::numeric_limits<double>::infinity();
  for (Eigen::Index f = 0; f < x.cols(); ++f) {
    std::vector<double> values(x.col(f).begin(), x.col(f).end());
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    for (std::size_t i = 0; i + 1 < values.size(); ++i) {
      const double t = 0.5 * (values[i] + values[i + 1]);
      double sse = 0.0;
      for (int side = 0; side < 2; ++side) {
        std::vector<double> part;
        for (Eigen::Index r = 0; r < x.rows(); ++r) {
          if ((x(r, f) <= t) == (side == 0)) part.push_back(y(r));
        }
        const double mean = std::accumulate(part.begin(), part.end(), 0.0) / static_cast<double>(part.size());
        for (double v : part) sse += (v - mean) * (v - mean);
      }
      if (sse < best.sse - 1e-12) best = {true, static_cast<std::size_t>(f), t, sse};
    }
  }
  return best;
}

}  // namespace

TEST_CASE("ets examples") {
  const std::vector<double> constant(20, 7.0);
  for (double a : ets_alpha_grid()) {
    for (double v : ets_forecast(constant, a)) CHECK(v == doctest::Approx(7.0).epsilon(1e-14));
  }
  CHECK(ets_forecast(std::vector<double>{3, 9, 4}, 1.0) == std::vector<double>(6, 4.0));
  CHECK(ets_forecast(std::vector<double>{0, 1}, 0.5) == std::vector<double>(6, 0.5));
  CHECK_THROWS_AS(ets_forecast(std::vector<double>{}, 0.5), Error);
  CHECK_THROWS_AS(ets_forecast(std::vector<double>{1}, 0.0), Error);
  const auto grid = ets_alpha_grid();
  REQUIRE(grid.size() == 19);
  CHECK(grid.front() == doctest::Approx(0.05));
  CHECK(grid.back() == doctest::Approx(0.95));
}

TEST_CASE("ets alpha selection matches a brute-force search") {
  std::mt19937_64 rng(3);
  auto series = dfcast::testing::random_vector(rng, 120, 0, 30);
  for (std::size_t i = 60; i < series.size(); ++i) series[i] += 40;  // level shift favours large alpha
  std::vector<std::size_t> origins;
  for (std::size_t o = 70; o + 6 < series.size(); ++o) origins.push_back(o);
  double best_alpha = 0, best = std::numeric_limits<double>::infinity();
  for (double a : ets_alpha_grid()) {
    double sse = 0;
    for (auto o : origins) {
      double level = series[0];
      for (std::size_t t = 1; t <= o; ++t) level = a * series[t] + (1 - a) * level;
      for (std::size_t k = 1; k <= 6; ++k) sse += (series[o + k] - level) * (series[o + k] - level);
    }
    if (sse < best) best = sse, best_alpha = a;
  }
  CHECK(select_ets_alpha(series, origins) == best_alpha);
}

TEST_CASE("median examples") {
  CHECK(median({1, 2, 3, 4}) == 2.5);
  CHECK(median({5}) == 5);
  CHECK_THROWS_AS(median({}), Error);
  std::vector<double> perm;
  for (int r = 0; r < 16; ++r) {
    for (double v : {4, 1, 5, 3, 2}) perm.push_back(v);
  }
  CHECK(mpq_forecast(perm, perm.size() - 1) == std::vector<double>(6, 3.0));
  CHECK(mpq_forecast(std::vector<double>(100, 5.0), 99) == std::vector<double>(6, 5.0));
  CHECK(mpq_forecast(std::vector<double>{9, 1, 2, 3, 4}, 3) == std::vector<double>(6, 2.5));
}

TEST_CASE("mdpq examples") {
  std::vector<double> demand;
  std::vector<std::size_t> weekday;
  for (int w = 0; w < 13; ++w) {
    for (std::size_t d = 0; d < 6; ++d) {
      demand.push_back(static_cast<double>(d + 1));
      weekday.push_back(d);
    }
  }
  const std::vector<std::size_t> targets{2, 3, 4, 5, 0, 1};
  CHECK(mdpq_forecast(demand, weekday, demand.size() - 5, targets) == std::vector<double>{3, 4, 5, 6, 1, 2});

  const std::vector<double> flat(78, 4.0);
  CHECK(mdpq_forecast(flat, weekday, 77, targets) == mpq_forecast(flat, 77));

  const std::vector<double> week{7, 3, 8, 1, 9, 2};
  const std::vector<std::size_t> days{0, 1, 2, 3, 4, 5};
  CHECK(mdpq_forecast(week, days, 5, days) == week);

  // Tuesday missing from the window falls back to the overall median.
  const std::vector<double> gap{10, 30, 20};
  const std::vector<std::size_t> gap_days{0, 2, 3};
  const std::vector<std::size_t> want{1, 0, 1, 1, 1, 1};
  const auto f = mdpq_forecast(gap, gap_days, 2, want);
  CHECK(f[0] == 20);
  CHECK(f[1] == 10);
}

TEST_CASE("median forecasts match brute-force oracles on random windows") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> len(1, 200), val(0, 40);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = static_cast<std::size_t>(len(rng));
    std::vector<double> hist(n);
    std::vector<std::size_t> wd(n);
    const std::size_t shift = static_cast<std::size_t>(val(rng));
    for (std::size_t i = 0; i < n; ++i) {
      hist[i] = val(rng);
      wd[i] = (i + shift) % 6;
    }
    const std::size_t origin = n - 1;
    const std::size_t begin = origin + 1 >= kQuarterDays ? origin + 1 - kQuarterDays : 0;
    const std::vector<double> window(hist.begin() + static_cast<long>(begin), hist.begin() + static_cast<long>(origin) + 1);
    const double overall = sort_median(window);
    CHECK(mpq_forecast(hist, origin) == std::vector<double>(6, overall));

    std::vector<std::size_t> targets(6);
    for (std::size_t k = 0; k < 6; ++k) targets[k] = (origin + 1 + k + shift) % 6;
    const auto f = mdpq_forecast(hist, wd, origin, targets);
    for (std::size_t k = 0; k < 6; ++k) {
      std::vector<double> same;
      for (std::size_t i = begin; i <= origin; ++i) {
        if (wd[i] == targets[k]) same.push_back(hist[i]);
      }
      CHECK(f[k] == (same.empty() ? overall : sort_median(same)));
    }
  }
}

TEST_CASE("lasso with zero penalty matches the normal equations") {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> n01;
  Eigen::MatrixXd x(10, 2);
  Eigen::VectorXd y(10);
  for (int i = 0; i < 10; ++i) {
    x(i, 0) = n01(rng);
    x(i, 1) = n01(rng) + 0.5 * x(i, 0);
    y(i) = 1.5 + 2.0 * x(i, 0) - 3.0 * x(i, 1) + 0.3 * n01(rng);
  }
  Eigen::MatrixXd design(10, 3);
  design << Eigen::VectorXd::Ones(10), x;
  const Eigen::VectorXd beta = (design.transpose() * design).ldlt().solve(design.transpose() * y);

  const auto reg = LassoRegressor::train(x, y, 0.0);
  const auto [b0, slopes] = reg.raw_coefficients();
  CHECK(std::abs(b0 - beta(0)) < 1e-6);
  CHECK(std::abs(slopes(0) - beta(1)) < 1e-6);
  CHECK(std::abs(slopes(1) - beta(2)) < 1e-6);
  for (int i = 0; i < 10; ++i) CHECK(std::abs(reg.predict(x.row(i).transpose()) - design.row(i).dot(beta)) < 1e-6);
}

TEST_CASE("lasso closed forms and the kill condition") {
  std::mt19937_64 rng(6);
  std::normal_distribution<double> n01;
  Eigen::MatrixXd x(40, 3);
  Eigen::VectorXd y(40);
  for (int i = 0; i < 40; ++i) {
    for (int j = 0; j < 3; ++j) x(i, j) = n01(rng);
    y(i) = x(i, 0) - 2 * x(i, 2) + n01(rng);
  }
  const Eigen::MatrixXd xs = Standardizer::fit(x).apply(x);
  const Eigen::VectorXd yc = y.array() - y.mean();
  const double lambda_max = (xs.transpose() * yc).cwiseAbs().maxCoeff() / 40.0;
  const auto killed = lasso_fit(xs, y, lambda_max * 1.0001);
  CHECK(killed.coefficients.isZero(0));
  CHECK(killed.intercept == doctest::Approx(y.mean()));

  Eigen::MatrixXd one = x.col(0);
  one.array() -= one.mean();
  const Eigen::VectorXd yc2 = y.array() - y.mean();
  const double slope = one.col(0).dot(yc2) / one.col(0).squaredNorm();
  CHECK(lasso_fit(one, yc2, 0.0).coefficients(0) == doctest::Approx(slope).epsilon(1e-8));

  CHECK(soft_threshold(3.0, 1.0) == 2.0);
  CHECK(soft_threshold(-3.0, 1.0) == -2.0);
  CHECK(soft_threshold(0.5, 1.0) == 0.0);
  CHECK(lasso_lambda_grid() == std::vector<double>{0, 1e-4, 1e-3, 1e-2, 1e-1, 1, 10});

  Eigen::MatrixXd bad = x;
  bad(3, 1) = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(lasso_fit(bad, y, 0.1), Error);
}

TEST_CASE("lasso objective never increases across sweeps") {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> n01;
  for (double lambda : {0.0, 0.01, 0.1, 0.5}) {
    Eigen::MatrixXd x(60, 8);
    Eigen::VectorXd y(60);
    for (int i = 0; i < 60; ++i) {
      for (int j = 0; j < 8; ++j) x(i, j) = n01(rng) + (j > 0 ? 0.7 * x(i, j - 1) : 0.0);
      y(i) = x(i, 1) - x(i, 5) + n01(rng);
    }
    const auto fit = lasso_fit(x, y, lambda);
    REQUIRE(!fit.objective_trace.empty());
    for (std::size_t s = 1; s < fit.objective_trace.size(); ++s) {
      CHECK(fit.objective_trace[s] <= fit.objective_trace[s - 1] + 1e-12);
    }
    CHECK(fit.objective_trace.back() ==
          doctest::Approx(lasso_objective(x, y, lambda, fit.intercept, fit.coefficients)));
  }
}

TEST_CASE("best split matches exhaustive search") {
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<int> v(0, 9);
  const std::vector<std::size_t> rows{0, 1, 2, 3, 4, 5};
  const std::vector<std::size_t> features{0, 1};
  int checked = 0;
  for (int trial = 0; trial < 300; ++trial) {
    Eigen::MatrixXd x(6, 2);
    Eigen::VectorXd y(6);
    for (int i = 0; i < 6; ++i) {
      x(i, 0) = v(rng);
      x(i, 1) = v(rng);
      y(i) = v(rng);
    }
    const Split oracle = exhaustive_split(x, y);
    const Split got = best_split(x, y, rows, features);
    REQUIRE(got.valid == oracle.valid);
    if (!oracle.valid) continue;
    ++checked;
    CHECK(got.sse == doctest::Approx(oracle.sse).epsilon(1e-12));
    CHECK(got.feature == oracle.feature);
    CHECK(got.threshold == oracle.threshold);

    TreeOptions opt;
    opt.bootstrap = false;
    opt.mtry = 2;
    opt.max_leaf_rows = 1;
    std::mt19937_64 tree_rng(1);
    const auto tree = RegressionTree::fit(x, y, rows, opt, tree_rng);
    CHECK(tree.nodes().front().feature == static_cast<int>(oracle.feature));
    CHECK(tree.nodes().front().threshold == oracle.threshold);
  }
  CHECK(checked > 250);
}

TEST_CASE("random forest properties") {
  std::mt19937_64 data_rng(9);
  std::uniform_real_distribution<double> u(0, 10);
  Eigen::MatrixXd x(80, 4);
  Eigen::VectorXd y(80);
  for (int i = 0; i < 80; ++i) {
    for (int j = 0; j < 4; ++j) x(i, j) = u(data_rng);
    y(i) = x(i, 0) * x(i, 0) - 3 * x(i, 2) + u(data_rng);
  }
  std::mt19937_64 a(4), b(4);
  const auto fa = rf_fit(x, y, 30, a);
  const auto fb = rf_fit(x, y, 30, b);
  for (int t = 0; t < 50; ++t) {
    Eigen::VectorXd q(4);
    for (int j = 0; j < 4; ++j) q(j) = u(data_rng) * 1.5 - 2.5;
    const double p = fa.predict(q);
    CHECK(p == fb.predict(q));
    CHECK(p >= y.minCoeff());
    CHECK(p <= y.maxCoeff());
  }

  TreeOptions stump;
  stump.max_depth = 0;
  std::mt19937_64 c(5);
  const auto flat = rf_fit(x, y, 2000, c, stump);
  CHECK(flat.predict(x.row(0).transpose()) == doctest::Approx(y.mean()).epsilon(0.02));

  std::mt19937_64 d(6);
  CHECK_THROWS_AS(rf_fit(x.topRows(1), y.head(1), 10, d), Error);
}

TEST_CASE("run_baseline on a prepared series") {
  using dfcast::testing::ymd;
  const auto fm = dfcast::testing::weekly_matrix(ymd(2019, 1, 1), ymd(2021, 5, 31), 21);
  const std::vector<std::string> cols{"prev_demand", "known_orders", "dow_mon", "dow_tue", "dow_wed",
                                      "dow_thu",     "dow_fri",      "dow_sat"};
  const auto ps = pipeline::prepare_series(fm, cols, ymd(2019, 1, 1));
  BaselineOptions opt;
  opt.rf_trees = 15;
  opt.seed = 3;
  for (auto tag : all_baselines()) {
    CAPTURE(to_string(tag));
    CHECK(parse_baseline_tag(to_string(tag)) == tag);
    const auto out = run_baseline(tag, ps, ps.test, opt);
    REQUIRE(out.size() == ps.test.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
      CHECK(out[i].origin == ps.test[i].origin);
      CHECK(out[i].values.size() == 6);
      for (double v : out[i].values) CHECK(v >= 0.0);
    }
    const auto again = run_baseline(tag, ps, ps.test, opt);
    for (std::size_t i = 0; i < out.size(); ++i) CHECK(again[i].values == out[i].values);

    // Overwriting demand after the first test origin must not move its forecast.
    const std::size_t origin = ps.test.front().origin;
    auto perturbed = ps;
    for (Eigen::Index r = static_cast<Eigen::Index>(origin) + 1; r < perturbed.demand.size(); ++r) perturbed.demand(r) += 1000;
    const std::vector<pipeline::WindowedSample> first{ps.test.front()};
    CHECK(run_baseline(tag, perturbed, first, opt).front().values == out.front().values);
  }
  CHECK(!parse_baseline_tag("ARIMA"));
}
