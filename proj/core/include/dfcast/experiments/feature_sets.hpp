#pragma once

#include <string>
#include <vector>

namespace dfcast::experiments {

/// Named subset of the engineered feature columns. Always contains
/// prev_demand; columns are unique and known.
class FeatureSet {
 public:
  /// Throws Errc::config when the set is empty, lacks prev_demand, repeats a
  /// column or names an unknown one.
  FeatureSet(std::string name, std::vector<std::string> columns);

  const std::string& name() const { return name_; }
  const std::vector<std::string>& columns() const { return columns_; }
  std::size_t size() const { return columns_.size(); }

  bool operator==(const FeatureSet&) const = default;

 private:
  std::string name_;
  std::vector<std::string> columns_;
};

FeatureSet univariate_set();
/// prev_demand and known_orders.
FeatureSet known_orders_set();
/// prev_demand, known_orders, day of week and the four further-future flags.
FeatureSet optimal_set();
FeatureSet full_set();
/// prev_demand, price and promotion.
FeatureSet price_promo_set();

/// univariate, known_orders, optimal, full, price_promo.
std::vector<FeatureSet> named_feature_sets();

/// Throws Errc::config for an unknown name.
FeatureSet feature_set_by_name(const std::string& name);

}  // namespace dfcast::experiments
