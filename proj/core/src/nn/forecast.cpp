#include "dfcast/nn/forecast.hpp"

#include <algorithm>

#include "dfcast/error.hpp"
#include "dfcast/nn/network.hpp"

namespace dfcast::nn {

std::vector<std::vector<double>> to_demand_units(const Eigen::MatrixXd& outputs,
                                                 const pipeline::MinMaxScaler& scaler,
                                                 std::size_t block, std::size_t horizon) {
  const auto first = static_cast<Eigen::Index>(block * horizon);
  if (first + static_cast<Eigen::Index>(horizon) > outputs.rows()) {
    throw Error(Errc::shape, "output block beyond network output size");
  }
  const std::size_t demand_col = scaler.index_of(pipeline::kDemandColumn);
  std::vector<std::vector<double>> out(static_cast<std::size_t>(outputs.cols()));
  for (Eigen::Index i = 0; i < outputs.cols(); ++i) {
    auto& v = out[static_cast<std::size_t>(i)];
    v.reserve(horizon);
    for (std::size_t k = 0; k < horizon; ++k) {
      const double scaled = outputs(first + static_cast<Eigen::Index>(k), i);
      v.push_back(std::max(0.0, scaler.inverse_value(demand_col, scaled)));
    }
  }
  return out;
}

std::vector<std::vector<double>> forecast_series(const Parameters& params,
                                                 const pipeline::PreparedSeries& series,
                                                 std::span<const pipeline::WindowedSample> samples) {
  if (samples.empty()) return {};
  const auto horizon = static_cast<std::size_t>(samples.front().target.size());
  return to_demand_units(predict(params, samples), series.scaler, 0, horizon);
}

std::vector<std::vector<double>> actuals_for(const pipeline::PreparedSeries& series,
                                             std::span<const pipeline::WindowedSample> samples) {
  std::vector<std::vector<double>> out;
  out.reserve(samples.size());
  for (const auto& s : samples) {
    const Eigen::VectorXd a = series.actuals(s.origin, static_cast<std::size_t>(s.target.size()));
    out.emplace_back(a.begin(), a.end());
  }
  return out;
}

std::vector<std::size_t> origins_of(std::span<const pipeline::WindowedSample> samples) {
  std::vector<std::size_t> out;
  out.reserve(samples.size());
  for (const auto& s : samples) out.push_back(s.origin);
  return out;
}

}  // namespace dfcast::nn
