#include "dfcast/pipeline/prepare.hpp"

#include "dfcast/error.hpp"

namespace dfcast::pipeline {

Eigen::VectorXd PreparedSeries::actuals(std::size_t origin, std::size_t horizon) const {
  if (origin + horizon >= static_cast<std::size_t>(demand.size())) {
    throw Error(Errc::shape, "origin + horizon beyond series end");
  }
  return demand.segment(static_cast<Eigen::Index>(origin + 1), static_cast<Eigen::Index>(horizon));
}

Eigen::MatrixXd select_columns(const ingest::FeatureMatrix& fm,
                               const std::vector<std::string>& names) {
  Eigen::MatrixXd out(fm.values.rows(), static_cast<Eigen::Index>(names.size()));
  for (std::size_t i = 0; i < names.size(); ++i) {
    out.col(static_cast<Eigen::Index>(i)) =
        fm.values.col(static_cast<Eigen::Index>(ingest::feature_index(names[i])));
  }
  return out;
}

namespace {

Eigen::MatrixXd raw_columns(const ingest::FeatureMatrix& fm, const std::vector<std::string>& names) {
  Eigen::MatrixXd raw(fm.values.rows(), static_cast<Eigen::Index>(names.size() + 1));
  raw.leftCols(static_cast<Eigen::Index>(names.size())) = select_columns(fm, names);
  raw.rightCols(1) = fm.targets;
  return raw;
}

std::vector<std::string> with_demand(std::vector<std::string> names) {
  names.emplace_back(kDemandColumn);
  return names;
}

}  // namespace

Eigen::MatrixXd scale_features(const ingest::FeatureMatrix& fm, const std::vector<std::string>& names,
                               const MinMaxScaler& scaler) {
  if (scaler.columns() != with_demand(names)) {
    throw Error(Errc::schema, "scaler columns do not match the requested features");
  }
  return scaler.transform(raw_columns(fm, names));
}

PreparedSeries prepare_series(const ingest::FeatureMatrix& fm,
                              const std::vector<std::string>& feature_columns, Date series_start,
                              std::size_t window, std::size_t horizon, const MinMaxScaler* fitted) {
  if (feature_columns.empty()) throw Error(Errc::schema, "empty feature column set");
  PreparedSeries ps;
  ps.key = fm.key;
  ps.feature_columns = feature_columns;
  ps.dates = fm.dates;
  ps.demand = fm.targets;
  ps.split = chronological_split(fm.dates, series_start);

  const Eigen::MatrixXd raw = raw_columns(fm, feature_columns);
  if (fitted) {
    ps.scaler = *fitted;
  } else {
    const auto train_rows = static_cast<Eigen::Index>(ps.split.train.size());
    ps.scaler = MinMaxScaler::fit(raw.topRows(train_rows), with_demand(feature_columns),
                                  ps.split.boundaries.train_interval());
  }
  const Eigen::MatrixXd scaled = scale_features(fm, feature_columns, ps.scaler);
  ps.inputs = scaled.leftCols(static_cast<Eigen::Index>(feature_columns.size()));
  ps.targets = scaled.rightCols(1);

  ps.train = make_windows(ps.inputs, ps.targets, window, horizon, ps.split.train);
  ps.validation = make_windows(ps.inputs, ps.targets, window, horizon, ps.split.validation);
  ps.test = make_windows(ps.inputs, ps.targets, window, horizon, ps.split.test);
  return ps;
}

}  // namespace dfcast::pipeline
