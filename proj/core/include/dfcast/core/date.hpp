#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace dfcast {

using Date = std::chrono::sys_days;

/// Strict ISO-8601 calendar date (YYYY-MM-DD). Returns nullopt on anything else.
std::optional<Date> parse_date(std::string_view text);
std::string format_date(Date d);

/// Adds calendar months; a day past the end of the target month clamps to its last day.
Date add_months(Date d, int months);

inline std::chrono::weekday weekday_of(Date d) { return std::chrono::weekday{d}; }

/// 1-based ordinal day within the year.
int day_of_year(Date d);

/// Inclusive date interval.
struct DateInterval {
  Date first;
  Date last;

  bool contains(Date d) const { return first <= d && d <= last; }
  bool operator==(const DateInterval&) const = default;
};

}  // namespace dfcast
