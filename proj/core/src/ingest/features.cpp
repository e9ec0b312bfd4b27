#include "dfcast/ingest/features.hpp"

#include "dfcast/error.hpp"

namespace dfcast::ingest {

std::size_t feature_index(std::string_view name) {
  for (std::size_t i = 0; i < kFeatureColumns.size(); ++i) {
    if (kFeatureColumns[i] == name) return i;
  }
  throw Error(Errc::schema, "unknown feature column '" + std::string(name) + "'");
}

SalesTable impute_prices(SalesTable table, const DateInterval& fit_range) {
  for (auto& s : table.series) {
    double sum = 0.0;
    std::size_t count = 0;
    bool any_missing = false;
    for (const auto& r : s.records) {
      if (!r.price) {
        any_missing = true;
      } else if (fit_range.contains(r.date)) {
        sum += *r.price;
        ++count;
      }
    }
    if (count == 0) {
      throw Error(Errc::imputation_impossible,
                  "no observed price for " + s.key.label() + " in " +
                      format_date(fit_range.first) + ".." + format_date(fit_range.last));
    }
    if (!any_missing) continue;
    const double mean = sum / static_cast<double>(count);
    for (auto& r : s.records) {
      if (!r.price) r.price = mean;
    }
  }
  return table;
}

FeatureMatrix derive_series_features(const SalesSeries& series, const StoreCalendar& cal) {
  const auto& recs = series.records;
  if (recs.size() < 2) {
    throw Error(Errc::too_short_series, series.key.label() + ": need at least 2 days");
  }
  const std::size_t n = recs.size() - 1;
  FeatureMatrix fm{series.key, {}, Eigen::MatrixXd::Zero(n, kFeatureCount), Eigen::VectorXd(n)};
  fm.dates.reserve(n);

  const std::size_t dow0 = feature_index("dow_mon");
  for (std::size_t t = 1; t < recs.size(); ++t) {
    const auto& r = recs[t];
    if (!cal.is_open(r.date)) {
      throw Error(Errc::schema, series.key.label() + ": record on closed day " + format_date(r.date));
    }
    if (!r.price) {
      throw Error(Errc::schema, series.key.label() + ": missing price on " + format_date(r.date) +
                                    " (impute first)");
    }
    const auto row = static_cast<Eigen::Index>(t - 1);
    const Date tomorrow = r.date + std::chrono::days{1};
    const Date day_after = r.date + std::chrono::days{2};
    fm.values(row, 0) = recs[t - 1].demand;
    fm.values(row, 1) = r.known_orders;
    fm.values(row, 2) = *r.price;
    fm.values(row, 3) = r.promotion ? 1.0 : 0.0;
    fm.values(row, static_cast<Eigen::Index>(dow0 + working_weekday_index(r.date))) = 1.0;
    fm.values(row, 10) = cal.is_open(tomorrow) ? 1.0 : 0.0;
    fm.values(row, 11) = cal.is_open(day_after) ? 1.0 : 0.0;
    fm.values(row, 12) = cal.is_holiday(tomorrow) ? 1.0 : 0.0;
    fm.values(row, 13) = cal.is_holiday(day_after) ? 1.0 : 0.0;
    fm.targets(row) = r.demand;
    fm.dates.push_back(r.date);
  }
  return fm;
}

std::vector<FeatureMatrix> derive_features(const SalesTable& table, const StoreCalendar& cal) {
  std::vector<FeatureMatrix> out;
  out.reserve(table.series.size());
  for (const auto& s : table.series) out.push_back(derive_series_features(s, cal));
  return out;
}

}  // namespace dfcast::ingest
