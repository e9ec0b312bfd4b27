#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dfcast/core/kv_config.hpp"

namespace dfcast::experiments {

enum class Variant { univariate, known_orders, feature_search, pretrain, parallel };

std::string to_string(Variant v);
std::optional<Variant> parse_variant(const std::string& text);

/// One experiment as read from a key-value file:
///   variant = pretrain
///   products = P001,P002        (empty: every product)
///   warehouse = W1              (target warehouse for pretrain)
///   feature_sets = optimal       (candidates for feature_search)
///   seeds = 1,2,3
///   spearman_threshold = 0.2
struct ExperimentPlan {
  Variant variant = Variant::univariate;
  std::vector<std::string> products;
  std::string warehouse;
  std::vector<std::string> feature_sets;
  std::vector<std::uint64_t> seeds{0};
  double spearman_threshold = 0.2;

  /// Throws Errc::config on a violated variant precondition.
  void validate() const;

  static ExperimentPlan from_config(const KeyValueConfig& kv);
};

}  // namespace dfcast::experiments
