#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "dfcast/nn/params.hpp"
#include "dfcast/pipeline/prepare.hpp"

namespace dfcast::nn {

/// Maps one block of scaled network outputs back to demand units through the
/// scaler's demand column and clamps at zero. `outputs` is K x N; rows
/// [block * horizon, (block + 1) * horizon) are used. Returns N vectors.
std::vector<std::vector<double>> to_demand_units(const Eigen::MatrixXd& outputs,
                                                 const pipeline::MinMaxScaler& scaler,
                                                 std::size_t block = 0,
                                                 std::size_t horizon = pipeline::kHorizon);

/// Forecasts of a single-series network for every sample, in demand units.
std::vector<std::vector<double>> forecast_series(const Parameters& params,
                                                 const pipeline::PreparedSeries& series,
                                                 std::span<const pipeline::WindowedSample> samples);

/// Actual demand (original units) of the horizon following each sample's origin.
std::vector<std::vector<double>> actuals_for(const pipeline::PreparedSeries& series,
                                             std::span<const pipeline::WindowedSample> samples);

std::vector<std::size_t> origins_of(std::span<const pipeline::WindowedSample> samples);

}  // namespace dfcast::nn
