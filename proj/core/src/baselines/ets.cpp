#include "dfcast/baselines/ets.hpp"

#include <limits>

#include "dfcast/error.hpp"

namespace dfcast::baselines {

double ets_level(std::span<const double> history, double alpha) {
  if (history.empty()) throw Error(Errc::empty_input, "ets: empty history");
  if (!(alpha > 0.0 && alpha <= 1.0)) throw Error(Errc::config, "ets: alpha must be in (0, 1]");
  double level = history.front();
  for (std::size_t t = 1; t < history.size(); ++t) {
    level = alpha * history[t] + (1.0 - alpha) * level;
  }
  return level;
}

std::vector<double> ets_forecast(std::span<const double> history, double alpha,
                                 std::size_t horizon) {
  return std::vector<double>(horizon, ets_level(history, alpha));
}

std::vector<double> ets_alpha_grid() {
  std::vector<double> grid;
  for (int k = 1; k <= 19; ++k) grid.push_back(0.05 * k);
  return grid;
}

double select_ets_alpha(std::span<const double> series, std::span<const std::size_t> origins,
                        std::size_t horizon) {
  if (series.empty()) throw Error(Errc::empty_input, "ets: empty series");
  double best_alpha = 0.05;
  double best_sse = std::numeric_limits<double>::infinity();
  for (double alpha : ets_alpha_grid()) {
    // levels[t] is the level after observing series[t]
    std::vector<double> levels(series.size());
    levels[0] = series[0];
    for (std::size_t t = 1; t < series.size(); ++t) {
      levels[t] = alpha * series[t] + (1.0 - alpha) * levels[t - 1];
    }
    double sse = 0.0;
    for (std::size_t o : origins) {
      for (std::size_t k = 1; k <= horizon && o + k < series.size(); ++k) {
        const double e = series[o + k] - levels[o];
        sse += e * e;
      }
    }
    if (sse < best_sse) {
      best_sse = sse;
      best_alpha = alpha;
    }
  }
  return best_alpha;
}

}  // namespace dfcast::baselines
