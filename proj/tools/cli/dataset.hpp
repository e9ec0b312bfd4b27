#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "cli/run_config.hpp"
#include "dfcast/ingest/features.hpp"

namespace dfcast::cli {

/// Loaded and feature-engineered input data, restricted to the configured
/// products and warehouse.
struct Dataset {
  ingest::SalesTable table;
  std::set<Date> holidays;
  std::vector<ingest::FeatureMatrix> series;  // ordered by key
  std::map<std::string, std::string> categories;
  std::size_t n_warehouses = 0;
  Date start{};

  std::string category_of(const SeriesKey& key) const;
  const ingest::FeatureMatrix* find(const SeriesKey& key) const;
  /// Product id alone for single-warehouse data, product@warehouse otherwise.
  std::string label(const SeriesKey& key) const;
};

/// Missing input files are configuration errors. The product file is optional.
Dataset load_dataset(const RunConfig& rc, bool apply_filters = true);

}  // namespace dfcast::cli
