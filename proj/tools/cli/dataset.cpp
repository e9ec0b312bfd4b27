#include "cli/dataset.hpp"

#include <algorithm>

#include "dfcast/error.hpp"
#include "dfcast/pipeline/split.hpp"

namespace dfcast::cli {
namespace {

void require_file(const std::filesystem::path& p, const char* what) {
  if (!std::filesystem::is_regular_file(p)) {
    throw Error(Errc::config, std::string(what) + " file not found: " + p.string());
  }
}

}  // namespace

std::string Dataset::category_of(const SeriesKey& key) const {
  const auto it = categories.find(key.product.str());
  return it == categories.end() ? "unknown" : it->second;
}

const ingest::FeatureMatrix* Dataset::find(const SeriesKey& key) const {
  for (const auto& s : series) {
    if (s.key == key) return &s;
  }
  return nullptr;
}

std::string Dataset::label(const SeriesKey& key) const {
  return n_warehouses > 1 ? key.label() : key.product.str();
}

Dataset load_dataset(const RunConfig& rc, bool apply_filters) {
  require_file(rc.sales, "sales");
  require_file(rc.holidays, "holiday");
  Dataset ds;
  ds.holidays = ingest::load_holidays_csv(rc.holidays);
  ds.table = ingest::load_sales_csv(rc.sales);
  if (ds.table.series.empty()) throw Error(Errc::empty_input, "sales file has no records");
  if (std::filesystem::is_regular_file(rc.products)) {
    for (const auto& p : ingest::load_product_csv(rc.products)) ds.categories[p.id.str()] = p.category;
  }
  ds.start = ds.table.first_date();
  const auto fit_range = pipeline::split_boundaries(ds.start).train_interval();
  ds.table = ingest::impute_prices(std::move(ds.table), fit_range);
  const auto cal = ingest::calendar_for(ds.table, ds.holidays);

  std::set<std::string> warehouses;
  for (const auto& s : ds.table.series) warehouses.insert(s.key.warehouse.str());
  ds.n_warehouses = warehouses.size();

  for (const auto& s : ds.table.series) {
    if (apply_filters) {
      const auto& pf = rc.product_filter;
      if (!pf.empty() && std::find(pf.begin(), pf.end(), s.key.product.str()) == pf.end()) continue;
      if (!rc.warehouse.empty() && s.key.warehouse.str() != rc.warehouse) continue;
    }
    ds.series.push_back(ingest::derive_series_features(s, cal));
  }
  if (ds.series.empty()) throw Error(Errc::config, "no series match the product/warehouse filter");
  return ds;
}

}  // namespace dfcast::cli
