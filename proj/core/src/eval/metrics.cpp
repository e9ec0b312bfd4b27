#include "dfcast/eval/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "dfcast/error.hpp"

namespace dfcast::eval {
namespace {

void check_pair(std::span<const double> f, std::span<const double> a, const char* what) {
  if (f.size() != a.size()) throw Error(Errc::shape, std::string(what) + ": length mismatch");
  if (f.empty()) throw Error(Errc::shape, std::string(what) + ": empty input");
}

}  // namespace

double mae(std::span<const double> forecast, std::span<const double> actual) {
  check_pair(forecast, actual, "mae");
  double sum = 0.0;
  for (std::size_t t = 0; t < forecast.size(); ++t) sum += std::abs(forecast[t] - actual[t]);
  return sum / static_cast<double>(forecast.size());
}

double mmape(std::span<const double> forecast, std::span<const double> actual) {
  check_pair(forecast, actual, "mmape");
  double sum = 0.0;
  for (std::size_t t = 0; t < forecast.size(); ++t) {
    sum += std::abs(forecast[t] - actual[t]) / (1.0 + std::abs(actual[t]));
  }
  return sum / static_cast<double>(forecast.size());
}

double LookaheadErrors::mean_mae() const {
  return std::accumulate(mae.begin(), mae.end(), 0.0) / static_cast<double>(kLookaheads);
}

double LookaheadErrors::mean_mmape() const {
  return std::accumulate(mmape.begin(), mmape.end(), 0.0) / static_cast<double>(kLookaheads);
}

LookaheadErrors lookahead_errors(std::span<const std::size_t> forecast_origins,
                                 const std::vector<std::vector<double>>& forecasts,
                                 std::span<const std::size_t> actual_origins,
                                 const std::vector<std::vector<double>>& actuals) {
  if (!std::equal(forecast_origins.begin(), forecast_origins.end(), actual_origins.begin(),
                  actual_origins.end()) ||
      forecasts.size() != forecast_origins.size() || actuals.size() != actual_origins.size()) {
    throw Error(Errc::alignment, "forecast and actual origins are not aligned");
  }
  if (forecasts.empty()) throw Error(Errc::alignment, "no forecast origins to evaluate");
  const std::size_t m = forecasts.size();
  LookaheadErrors out;
  out.origins = m;
  std::vector<double> f(m), a(m);
  for (std::size_t k = 0; k < kLookaheads; ++k) {
    for (std::size_t i = 0; i < m; ++i) {
      if (forecasts[i].size() != kLookaheads || actuals[i].size() != kLookaheads) {
        throw Error(Errc::alignment, "every forecast and actual needs 6 lookaheads");
      }
      f[i] = forecasts[i][k];
      a[i] = actuals[i][k];
    }
    out.mae[k] = mae(f, a);
    out.mmape[k] = mmape(f, a);
  }
  return out;
}

OverallMeans overall_means(std::span<const LookaheadErrors> products) {
  if (products.empty()) throw Error(Errc::empty_input, "overall_means: no products");
  OverallMeans out;
  for (const auto& p : products) {
    out.mae += p.mean_mae();
    out.mmape += p.mean_mmape();
  }
  out.mae /= static_cast<double>(products.size());
  out.mmape /= static_cast<double>(products.size());
  return out;
}

double quantile_sorted(std::span<const double> sorted, double q) {
  if (sorted.empty()) throw Error(Errc::empty_input, "quantile of an empty sample");
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

BoxPlotStats boxplot_stats(const std::vector<std::pair<std::string, double>>& labelled_values) {
  if (labelled_values.empty()) throw Error(Errc::empty_input, "boxplot_stats: no values");
  std::vector<double> sorted;
  for (const auto& [label, v] : labelled_values) sorted.push_back(v);
  std::sort(sorted.begin(), sorted.end());

  BoxPlotStats s;
  s.q1 = quantile_sorted(sorted, 0.25);
  s.median = quantile_sorted(sorted, 0.5);
  s.q3 = quantile_sorted(sorted, 0.75);
  const double iqr = s.q3 - s.q1;
  const double low_fence = s.q1 - 1.5 * iqr;
  const double high_fence = s.q3 + 1.5 * iqr;
  s.whisker_low = s.q1;
  s.whisker_high = s.q3;
  for (double v : sorted) {
    if (v >= low_fence) s.whisker_low = std::min(s.whisker_low, v);
    if (v <= high_fence) s.whisker_high = std::max(s.whisker_high, v);
  }
  for (const auto& [label, v] : labelled_values) {
    if (v < low_fence || v > high_fence) s.outliers.emplace_back(label, v);
  }
  return s;
}

}  // namespace dfcast::eval
