#include "dfcast/pipeline/split.hpp"

#include <algorithm>

#include "dfcast/error.hpp"

namespace dfcast::pipeline {

SplitBoundaries split_boundaries(Date series_start) {
  return {series_start, add_months(series_start, kTrainMonths),
          add_months(series_start, kTrainMonths + kValidationMonths)};
}

DataSplit chronological_split(std::span<const Date> row_dates, Date series_start) {
  const auto b = split_boundaries(series_start);
  auto first_at = [&](Date d) {
    return static_cast<std::size_t>(std::lower_bound(row_dates.begin(), row_dates.end(), d) -
                                    row_dates.begin());
  };
  const std::size_t val = first_at(b.validation_start);
  const std::size_t test = first_at(b.test_start);
  DataSplit split{{0, val}, {val, test}, {test, row_dates.size()}, b};
  if (split.train.size() == 0 || split.validation.size() == 0 || split.test.size() == 0) {
    throw Error(Errc::split, "series starting " + format_date(series_start) +
                                 " does not span the 24/3/2-month split (need data after " +
                                 format_date(b.test_start) + ")");
  }
  return split;
}

}  // namespace dfcast::pipeline
