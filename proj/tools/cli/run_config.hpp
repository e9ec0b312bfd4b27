#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "dfcast/core/kv_config.hpp"
#include "dfcast/nn/params.hpp"

namespace dfcast::cli {

/// Settings of one invocation: the key-value file with flag overrides
/// layered on top.
struct RunConfig {
  std::filesystem::path sales = "sales.csv";
  std::filesystem::path holidays = "holidays.csv";
  std::filesystem::path products = "products.csv";
  std::filesystem::path out_dir = ".";
  std::string variant = "single";
  std::string feature_set = "optimal";
  std::vector<std::string> models;     // model files (evaluate, forecast)
  std::vector<std::string> baselines;  // baseline tags (evaluate)
  std::vector<std::string> product_filter;
  std::string warehouse;
  std::string origin;  // forecast origin date
  std::uint64_t seed = 0;
  std::size_t n_trials = 10;
  unsigned jobs = 1;
  std::optional<int> tune_max_epochs;
  double spearman_threshold = 0.2;
  nn::ModelConfig model;
  KeyValueConfig raw;

  /// Throws Errc::config on malformed values.
  static RunConfig from(const KeyValueConfig& kv);
};

/// Loads `path` when given (Errc::config if unreadable) and applies
/// `key=value` overrides in order.
KeyValueConfig layered_config(const std::optional<std::filesystem::path>& path,
                              const std::vector<std::string>& overrides);

}  // namespace dfcast::cli
