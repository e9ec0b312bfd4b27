#pragma once

#include <span>
#include <vector>

namespace dfcast::baselines {

/// Simple exponential smoothing level after the last observation:
/// l_0 = y_0, l_t = alpha * y_t + (1 - alpha) * l_{t-1}.
double ets_level(std::span<const double> history, double alpha);

/// Flat forecast: every lookahead equals the final level. Throws
/// Errc::empty_input on empty history and Errc::config unless 0 < alpha <= 1.
std::vector<double> ets_forecast(std::span<const double> history, double alpha,
                                 std::size_t horizon = 6);

/// {0.05, 0.10, ..., 0.95}
std::vector<double> ets_alpha_grid();

/// Alpha on the grid minimizing the squared error of flat forecasts issued
/// at each origin against series[origin + 1 .. origin + horizon]. Ties keep
/// the smaller alpha.
double select_ets_alpha(std::span<const double> series, std::span<const std::size_t> origins,
                        std::size_t horizon = 6);

}  // namespace dfcast::baselines
