#include "dfcast/experiments/feature_sets.hpp"

#include <algorithm>
#include <set>

#include "dfcast/error.hpp"
#include "dfcast/ingest/features.hpp"

namespace dfcast::experiments {

FeatureSet::FeatureSet(std::string name, std::vector<std::string> columns)
    : name_(std::move(name)), columns_(std::move(columns)) {
  if (columns_.empty()) throw Error(Errc::config, "feature set '" + name_ + "' is empty");
  if (std::find(columns_.begin(), columns_.end(), "prev_demand") == columns_.end()) {
    throw Error(Errc::config, "feature set '" + name_ + "' must contain prev_demand");
  }
  std::set<std::string> seen;
  for (const auto& c : columns_) {
    const bool known = std::find(ingest::kFeatureColumns.begin(), ingest::kFeatureColumns.end(), c) !=
                       ingest::kFeatureColumns.end();
    if (!known) throw Error(Errc::config, "feature set '" + name_ + "': unknown column " + c);
    if (!seen.insert(c).second) throw Error(Errc::config, "feature set '" + name_ + "': repeated column " + c);
  }
}

FeatureSet univariate_set() { return {"univariate", {"prev_demand"}}; }

FeatureSet known_orders_set() { return {"known_orders", {"prev_demand", "known_orders"}}; }

FeatureSet optimal_set() {
  return {"optimal",
          {"prev_demand", "known_orders", "dow_mon", "dow_tue", "dow_wed", "dow_thu", "dow_fri", "dow_sat",
           "store_open_tomorrow", "store_open_day_after", "holiday_tomorrow", "holiday_day_after"}};
}

FeatureSet full_set() {
  return {"full", std::vector<std::string>(ingest::kFeatureColumns.begin(), ingest::kFeatureColumns.end())};
}

FeatureSet price_promo_set() { return {"price_promo", {"prev_demand", "price", "promotion"}}; }

std::vector<FeatureSet> named_feature_sets() {
  return {univariate_set(), known_orders_set(), optimal_set(), full_set(), price_promo_set()};
}

FeatureSet feature_set_by_name(const std::string& name) {
  for (auto& s : named_feature_sets()) {
    if (s.name() == name) return s;
  }
  throw Error(Errc::config, "unknown feature set: " + name);
}

}  // namespace dfcast::experiments
