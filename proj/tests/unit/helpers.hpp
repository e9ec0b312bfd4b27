#pragma once

#include <chrono>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "dfcast/core/date.hpp"
#include "dfcast/core/sales.hpp"

namespace dfcast::testing {

inline Date ymd(int y, unsigned m, unsigned d) {
  return std::chrono::sys_days{std::chrono::year{y} / std::chrono::month{m} / std::chrono::day{d}};
}

inline SalesRecord record(Date d, double demand, std::optional<double> price = 1.0,
                          const std::string& product = "P1", const std::string& warehouse = "W1") {
  return SalesRecord{d, ProductId(product), WarehouseId(warehouse), demand, price, false, 0.0};
}

/// Every Monday..Saturday in [first, last] except the given holidays.
inline std::vector<Date> working_days(Date first, Date last, const std::set<Date>& holidays = {}) {
  std::vector<Date> out;
  for (Date d = first; d <= last; d += std::chrono::days{1}) {
    if (std::chrono::weekday{d} != std::chrono::Sunday && !holidays.contains(d)) out.push_back(d);
  }
  return out;
}

inline std::vector<double> random_vector(std::mt19937_64& rng, std::size_t n, double lo, double hi) {
  std::uniform_real_distribution<double> dist(lo, hi);
  std::vector<double> v(n);
  for (auto& x : v) x = dist(rng);
  return v;
}

}  // namespace dfcast::testing
