#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "dfcast/baselines/forest.hpp"
#include "dfcast/pipeline/prepare.hpp"

namespace dfcast::baselines {

enum class BaselineTag { ets, mpq, mdpq, lr, rf };

std::string to_string(BaselineTag tag);
std::optional<BaselineTag> parse_baseline_tag(std::string_view text);
std::vector<BaselineTag> all_baselines();

/// One multi-step forecast in original demand units, clamped at zero.
struct BaselineForecast {
  BaselineTag tag;
  std::size_t origin = 0;
  std::vector<double> values;
};

struct BaselineOptions {
  std::size_t tabular_lags = 12;  // trailing window rows flattened into LR/RF inputs
  std::size_t rf_trees = 100;
  TreeOptions rf_tree{};
  std::uint64_t seed = 0;
};

/// Flattens the trailing `lags` rows of a window into one feature row.
Eigen::VectorXd tabular_row(const pipeline::WindowedSample& sample, std::size_t lags);

/// Fits the baseline on the series' training split (selecting its
/// hyperparameter on the validation split where it has one) and forecasts
/// every origin in `samples`.
std::vector<BaselineForecast> run_baseline(BaselineTag tag, const pipeline::PreparedSeries& series,
                                           std::span<const pipeline::WindowedSample> samples,
                                           const BaselineOptions& options = {});

}  // namespace dfcast::baselines
