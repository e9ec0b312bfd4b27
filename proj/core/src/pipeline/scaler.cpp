#include "dfcast/pipeline/scaler.hpp"

#include <algorithm>
#include <cstdio>

#include "dfcast/core/kv_config.hpp"
#include "dfcast/error.hpp"

namespace dfcast::pipeline {
namespace {

std::string format_exact(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

MinMaxScaler MinMaxScaler::fit(const Eigen::MatrixXd& rows, std::vector<std::string> columns,
                               DateInterval fitted_on) {
  if (rows.rows() == 0) throw Error(Errc::empty_fit, "cannot fit scaler on zero rows");
  if (static_cast<std::size_t>(rows.cols()) != columns.size()) {
    throw Error(Errc::schema, "scaler column names do not match data width");
  }
  MinMaxScaler s;
  s.columns_ = std::move(columns);
  s.fitted_on_ = fitted_on;
  for (Eigen::Index c = 0; c < rows.cols(); ++c) {
    s.mins_.push_back(rows.col(c).minCoeff());
    s.maxs_.push_back(rows.col(c).maxCoeff());
  }
  return s;
}

double MinMaxScaler::transform_value(std::size_t column, double x) const {
  const double range = maxs_[column] - mins_[column];
  return range > 0 ? (x - mins_[column]) / range : 0.0;
}

double MinMaxScaler::inverse_value(std::size_t column, double scaled) const {
  const double range = maxs_[column] - mins_[column];
  return range > 0 ? scaled * range + mins_[column] : mins_[column];
}

Eigen::MatrixXd MinMaxScaler::transform(const Eigen::MatrixXd& rows) const {
  if (static_cast<std::size_t>(rows.cols()) != columns_.size()) {
    throw Error(Errc::schema, "transform: expected " + std::to_string(columns_.size()) +
                                  " columns, got " + std::to_string(rows.cols()));
  }
  Eigen::MatrixXd out(rows.rows(), rows.cols());
  for (Eigen::Index c = 0; c < rows.cols(); ++c) {
    for (Eigen::Index r = 0; r < rows.rows(); ++r) {
      out(r, c) = transform_value(static_cast<std::size_t>(c), rows(r, c));
    }
  }
  return out;
}

Eigen::MatrixXd MinMaxScaler::inverse_transform(const Eigen::MatrixXd& scaled) const {
  if (static_cast<std::size_t>(scaled.cols()) != columns_.size()) {
    throw Error(Errc::schema, "inverse_transform: expected " + std::to_string(columns_.size()) +
                                  " columns, got " + std::to_string(scaled.cols()));
  }
  Eigen::MatrixXd out(scaled.rows(), scaled.cols());
  for (Eigen::Index c = 0; c < scaled.cols(); ++c) {
    for (Eigen::Index r = 0; r < scaled.rows(); ++r) {
      out(r, c) = inverse_value(static_cast<std::size_t>(c), scaled(r, c));
    }
  }
  return out;
}

std::size_t MinMaxScaler::index_of(std::string_view column) const {
  auto it = std::find(columns_.begin(), columns_.end(), column);
  if (it == columns_.end()) {
    throw Error(Errc::schema, "scaler has no column '" + std::string(column) + "'");
  }
  return static_cast<std::size_t>(it - columns_.begin());
}

void MinMaxScaler::save(std::ostream& out) const {
  out << "fitted_on=" << format_date(fitted_on_.first) << ',' << format_date(fitted_on_.last)
      << '\n';
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    out << "column." << columns_[i] << '=' << format_exact(mins_[i]) << ','
        << format_exact(maxs_[i]) << '\n';
  }
}

MinMaxScaler MinMaxScaler::load(std::istream& in) {
  MinMaxScaler s;
  std::string line;
  bool have_interval = false;
  while (std::getline(in, line)) {
    const std::string body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    if (body == "end") break;
    const auto eq = body.find('=');
    if (eq == std::string::npos) throw Error(Errc::schema, "scaler: bad line '" + body + "'");
    const std::string key = body.substr(0, eq);
    const auto parts = split(body.substr(eq + 1), ',');
    if (parts.size() != 2) throw Error(Errc::schema, "scaler: expected two values in '" + body + "'");
    if (key == "fitted_on") {
      auto first = parse_date(parts[0]);
      auto last = parse_date(parts[1]);
      if (!first || !last) throw Error(Errc::schema, "scaler: bad fitted_on dates");
      s.fitted_on_ = {*first, *last};
      have_interval = true;
    } else if (key.rfind("column.", 0) == 0) {
      try {
        s.columns_.push_back(key.substr(7));
        s.mins_.push_back(std::stod(parts[0]));
        s.maxs_.push_back(std::stod(parts[1]));
      } catch (const std::exception&) {
        throw Error(Errc::schema, "scaler: bad number in '" + body + "'");
      }
      if (s.maxs_.back() < s.mins_.back()) {
        throw Error(Errc::schema, "scaler: max < min for column " + s.columns_.back());
      }
    } else {
      throw Error(Errc::schema, "scaler: unknown key '" + key + "'");
    }
  }
  if (!have_interval || s.columns_.empty()) throw Error(Errc::schema, "scaler: incomplete state");
  return s;
}

}  // namespace dfcast::pipeline
