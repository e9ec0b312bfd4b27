#pragma once

#include <span>

#include "dfcast/core/date.hpp"
#include "dfcast/pipeline/windows.hpp"

namespace dfcast::pipeline {

inline constexpr int kTrainMonths = 24;
inline constexpr int kValidationMonths = 3;

/// Calendar boundaries of the 24 / 3 / remainder month split.
struct SplitBoundaries {
  Date start;
  Date validation_start;  // start + 24 months
  Date test_start;        // start + 27 months

  DateInterval train_interval() const {
    return {start, validation_start - std::chrono::days{1}};
  }
};

SplitBoundaries split_boundaries(Date series_start);

struct DataSplit {
  RowRange train;
  RowRange validation;
  RowRange test;
  SplitBoundaries boundaries;
};

/// Row ranges for a series whose row dates are strictly increasing. Each
/// boundary snaps to the first row on or after the boundary date. Throws
/// Errc::split when any of the three parts would be empty.
DataSplit chronological_split(std::span<const Date> row_dates, Date series_start);

}  // namespace dfcast::pipeline
