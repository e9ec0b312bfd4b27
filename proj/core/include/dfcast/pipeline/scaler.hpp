#pragma once

#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "dfcast/core/date.hpp"

namespace dfcast::pipeline {

/// Column-wise min-max scaler. transform is (x - min) / (max - min) and is
/// deliberately not clipped; a constant column (max == min) maps to 0 and
/// inverts back to the constant.
class MinMaxScaler {
 public:
  MinMaxScaler() = default;

  /// Throws Errc::empty_fit on zero rows, Errc::schema if names and columns disagree.
  static MinMaxScaler fit(const Eigen::MatrixXd& rows, std::vector<std::string> columns,
                          DateInterval fitted_on);

  Eigen::MatrixXd transform(const Eigen::MatrixXd& rows) const;
  Eigen::MatrixXd inverse_transform(const Eigen::MatrixXd& scaled) const;

  double transform_value(std::size_t column, double x) const;
  double inverse_value(std::size_t column, double scaled) const;

  /// Throws Errc::schema for unknown names.
  std::size_t index_of(std::string_view column) const;

  std::size_t size() const { return columns_.size(); }
  const std::vector<std::string>& columns() const { return columns_; }
  const std::vector<double>& mins() const { return mins_; }
  const std::vector<double>& maxs() const { return maxs_; }
  const DateInterval& fitted_on() const { return fitted_on_; }

  /// Key-value text: `fitted_on=<first>,<last>` then `column.<name>=<min>,<max>`.
  void save(std::ostream& out) const;
  static MinMaxScaler load(std::istream& in);

  bool operator==(const MinMaxScaler&) const = default;

 private:
  std::vector<std::string> columns_;
  std::vector<double> mins_;
  std::vector<double> maxs_;
  DateInterval fitted_on_{};
};

}  // namespace dfcast::pipeline
