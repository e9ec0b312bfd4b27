#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include "dfcast/core/date.hpp"

namespace dfcast {

/// Number of working weekdays (Monday..Saturday).
inline constexpr std::size_t kWorkingWeekdays = 6;

/// The store's open days over a covered date range. The store is open on
/// every Monday..Saturday that is not a public holiday; Sundays and holidays
/// are closed. Immutable after construction.
class StoreCalendar {
 public:
  StoreCalendar() = default;

  /// Builds the calendar covering [first, last] from the weekday rule.
  StoreCalendar(Date first, Date last, std::set<Date> holidays);

  /// Validates an explicit open-day list against the weekday rule and the
  /// holiday set; throws Errc::schema on any violation.
  static StoreCalendar from_open_days(std::vector<Date> open_days, std::set<Date> holidays);

  std::optional<std::size_t> working_day_index(Date d) const;

  bool is_holiday(Date d) const { return holidays_.contains(d); }

  /// Rule-based, so it also answers for dates past either end of the range.
  bool is_open(Date d) const;

  std::span<const Date> open_days() const { return open_days_; }
  const std::set<Date>& holidays() const { return holidays_; }

 private:
  std::vector<Date> open_days_;
  std::set<Date> holidays_;
};

/// Monday -> index 0 ... Saturday -> index 5. Throws Errc::invalid_weekday on Sunday.
std::size_t working_weekday_index(Date d);

std::array<double, kWorkingWeekdays> day_of_week_onehot(Date d);

}  // namespace dfcast
