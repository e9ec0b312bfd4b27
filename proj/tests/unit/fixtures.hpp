#pragma once

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "dfcast/core/calendar.hpp"
#include "dfcast/ingest/csv.hpp"
#include "dfcast/ingest/features.hpp"
#include "helpers.hpp"

namespace dfcast::testing {

/// Weekly-seasonal series with Poisson-like noise and known orders at 80% of demand.
inline std::vector<SalesRecord> weekly_records(Date first, Date last, std::uint64_t seed,
                                               const std::string& product = "P1",
                                               const std::string& warehouse = "W1", double level = 20.0) {
  static constexpr double kProfile[6] = {0.9, 0.85, 0.95, 1.0, 1.2, 1.4};
  const StoreCalendar cal(first, last, {});
  std::mt19937_64 rng(seed);
  std::vector<SalesRecord> out;
  for (Date d : cal.open_days()) {
    std::poisson_distribution<int> pois(level * kProfile[working_weekday_index(d)]);
    auto r = record(d, pois(rng), 2.5, product, warehouse);
    r.known_orders = std::round(0.8 * r.demand);
    out.push_back(r);
  }
  return out;
}

inline ingest::FeatureMatrix weekly_matrix(Date first, Date last, std::uint64_t seed, double level = 20.0) {
  const StoreCalendar cal(first, last, {});
  return ingest::derive_series_features(ingest::group_records(weekly_records(first, last, seed, "P1", "W1", level)).series[0],
                                        cal);
}

}  // namespace dfcast::testing
