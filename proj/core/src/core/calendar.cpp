#include "dfcast/core/calendar.hpp"

#include <algorithm>

#include "dfcast/error.hpp"

namespace dfcast {
namespace {

bool weekday_open(Date d) { return weekday_of(d) != std::chrono::Sunday; }

}  // namespace

StoreCalendar::StoreCalendar(Date first, Date last, std::set<Date> holidays)
    : holidays_(std::move(holidays)) {
  for (Date d = first; d <= last; d += std::chrono::days{1}) {
    if (weekday_open(d) && !holidays_.contains(d)) open_days_.push_back(d);
  }
}

StoreCalendar StoreCalendar::from_open_days(std::vector<Date> open_days, std::set<Date> holidays) {
  for (std::size_t i = 0; i < open_days.size(); ++i) {
    const Date d = open_days[i];
    if (i > 0 && open_days[i - 1] >= d) {
      throw Error(Errc::schema, "open days must be strictly increasing at " + format_date(d));
    }
    if (!weekday_open(d)) throw Error(Errc::schema, "open day on a Sunday: " + format_date(d));
    if (holidays.contains(d)) throw Error(Errc::schema, "open day is a holiday: " + format_date(d));
  }
  if (open_days.empty()) return StoreCalendar{};
  StoreCalendar expected(open_days.front(), open_days.back(), holidays);
  if (expected.open_days_ != open_days) {
    throw Error(Errc::schema, "open days skip a non-holiday working weekday");
  }
  return expected;
}

std::optional<std::size_t> StoreCalendar::working_day_index(Date d) const {
  auto it = std::lower_bound(open_days_.begin(), open_days_.end(), d);
  if (it == open_days_.end() || *it != d) return std::nullopt;
  return static_cast<std::size_t>(it - open_days_.begin());
}

bool StoreCalendar::is_open(Date d) const { return weekday_open(d) && !holidays_.contains(d); }

std::size_t working_weekday_index(Date d) {
  const unsigned iso = weekday_of(d).iso_encoding();  // Monday = 1 ... Sunday = 7
  if (iso == 7) throw Error(Errc::invalid_weekday, "Sunday is not a working day: " + format_date(d));
  return iso - 1;
}

std::array<double, kWorkingWeekdays> day_of_week_onehot(Date d) {
  std::array<double, kWorkingWeekdays> out{};
  out[working_weekday_index(d)] = 1.0;
  return out;
}

}  // namespace dfcast
