#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "dfcast/core/calendar.hpp"
#include "dfcast/ingest/csv.hpp"

namespace dfcast::ingest {

inline constexpr std::array<std::string_view, 14> kFeatureColumns = {
    "prev_demand",         "known_orders",         "price",
    "promotion",           "dow_mon",              "dow_tue",
    "dow_wed",             "dow_thu",              "dow_fri",
    "dow_sat",             "store_open_tomorrow",  "store_open_day_after",
    "holiday_tomorrow",    "holiday_day_after",
};
inline constexpr std::size_t kFeatureCount = kFeatureColumns.size();

/// Index of a feature column; throws Errc::schema for unknown names.
std::size_t feature_index(std::string_view name);

/// Per-working-day engineered features of one series. Row t describes
/// working day dates[t]; its target is that day's demand and prev_demand is
/// the demand of the series' previous working day.
struct FeatureMatrix {
  SeriesKey key;
  std::vector<Date> dates;
  Eigen::MatrixXd values;   // rows x kFeatureCount
  Eigen::VectorXd targets;  // demand, original units

  std::size_t rows() const { return dates.size(); }
};

/// Replaces each missing price with the mean of the group's observed prices
/// inside `fit_range`. Throws Errc::imputation_impossible naming the group if
/// it has none.
SalesTable impute_prices(SalesTable table, const DateInterval& fit_range);

FeatureMatrix derive_series_features(const SalesSeries& series, const StoreCalendar& cal);
std::vector<FeatureMatrix> derive_features(const SalesTable& table, const StoreCalendar& cal);

}  // namespace dfcast::ingest
