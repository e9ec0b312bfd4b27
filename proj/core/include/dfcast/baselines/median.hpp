#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace dfcast::baselines {

/// 13 weeks of 6 working days.
inline constexpr std::size_t kQuarterDays = 78;

/// Median with the mean-of-middle-two convention for even counts. Throws
/// Errc::empty_input on an empty input.
double median(std::vector<double> values);

/// Every lookahead equals the median demand over the `quarter` working days
/// ending at `origin` (inclusive), clipped at the series start.
std::vector<double> mpq_forecast(std::span<const double> history, std::size_t origin,
                                 std::size_t horizon = 6, std::size_t quarter = kQuarterDays);

/// Lookahead k is the median demand over the quarter window restricted to
/// days sharing target_weekdays[k]; a weekday absent from the window falls
/// back to the MPQ value. `weekdays` holds one index (Mon = 0 .. Sat = 5)
/// per history day.
std::vector<double> mdpq_forecast(std::span<const double> history,
                                  std::span<const std::size_t> weekdays, std::size_t origin,
                                  std::span<const std::size_t> target_weekdays,
                                  std::size_t quarter = kQuarterDays);

}  // namespace dfcast::baselines
