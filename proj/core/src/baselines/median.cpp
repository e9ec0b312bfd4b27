#include "dfcast/baselines/median.hpp"

#include <algorithm>

#include "dfcast/error.hpp"

namespace dfcast::baselines {

double median(std::vector<double> values) {
  if (values.empty()) throw Error(Errc::empty_input, "median of an empty window");
  const std::size_t mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid), values.end());
  const double upper = values[mid];
  if (values.size() % 2 == 1) return upper;
  const double lower = *std::max_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lower + upper);
}

std::vector<double> mpq_forecast(std::span<const double> history, std::size_t origin,
                                 std::size_t horizon, std::size_t quarter) {
  if (origin >= history.size() || quarter == 0) {
    throw Error(Errc::empty_input, "mpq: empty quarter window");
  }
  const std::size_t first = origin + 1 >= quarter ? origin + 1 - quarter : 0;
  const double m = median({history.begin() + static_cast<std::ptrdiff_t>(first),
                           history.begin() + static_cast<std::ptrdiff_t>(origin + 1)});
  return std::vector<double>(horizon, m);
}

std::vector<double> mdpq_forecast(std::span<const double> history,
                                  std::span<const std::size_t> weekdays, std::size_t origin,
                                  std::span<const std::size_t> target_weekdays,
                                  std::size_t quarter) {
  if (weekdays.size() != history.size()) {
    throw Error(Errc::shape, "mdpq: one weekday per history day required");
  }
  const double fallback = mpq_forecast(history, origin, 1, quarter).front();
  const std::size_t first = origin + 1 >= quarter ? origin + 1 - quarter : 0;
  std::vector<double> out;
  out.reserve(target_weekdays.size());
  for (std::size_t wd : target_weekdays) {
    std::vector<double> same_day;
    for (std::size_t t = first; t <= origin; ++t) {
      if (weekdays[t] == wd) same_day.push_back(history[t]);
    }
    out.push_back(same_day.empty() ? fallback : median(std::move(same_day)));
  }
  return out;
}

}  // namespace dfcast::baselines
