#pragma once

#include <string>
#include <vector>

#include "dfcast/ingest/features.hpp"
#include "dfcast/pipeline/scaler.hpp"
#include "dfcast/pipeline/split.hpp"
#include "dfcast/pipeline/windows.hpp"

namespace dfcast::pipeline {

inline constexpr const char* kDemandColumn = "demand";

/// A series ready for modelling: selected feature columns scaled with a
/// scaler fitted on the training rows, plus framed windows per split.
struct PreparedSeries {
  SeriesKey key;
  std::vector<std::string> feature_columns;
  std::vector<Date> dates;
  Eigen::MatrixXd inputs;   // scaled, rows x feature_columns
  Eigen::VectorXd targets;  // scaled demand
  Eigen::VectorXd demand;   // original units
  MinMaxScaler scaler;      // feature_columns followed by "demand"
  DataSplit split;
  std::vector<WindowedSample> train;
  std::vector<WindowedSample> validation;
  std::vector<WindowedSample> test;

  std::size_t n_features() const { return feature_columns.size(); }
  std::size_t demand_column() const { return feature_columns.size(); }

  /// Demand in original units of the `horizon` rows following `origin`.
  Eigen::VectorXd actuals(std::size_t origin, std::size_t horizon = kHorizon) const;
};

/// Extracts the named columns of a feature matrix (rows x names.size()).
Eigen::MatrixXd select_columns(const ingest::FeatureMatrix& fm,
                               const std::vector<std::string>& names);

/// Selected columns followed by demand, scaled with `scaler` (whose columns
/// must be exactly those names). Returns rows x (names.size() + 1).
Eigen::MatrixXd scale_features(const ingest::FeatureMatrix& fm, const std::vector<std::string>& names,
                               const MinMaxScaler& scaler);

/// Splits, scales and frames one series. The scaler is fitted on the
/// training rows unless `fitted` supplies one (e.g. from a saved model).
PreparedSeries prepare_series(const ingest::FeatureMatrix& fm,
                              const std::vector<std::string>& feature_columns, Date series_start,
                              std::size_t window = kInputWindow, std::size_t horizon = kHorizon,
                              const MinMaxScaler* fitted = nullptr);

}  // namespace dfcast::pipeline
