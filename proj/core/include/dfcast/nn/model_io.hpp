#pragma once

#include <filesystem>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "dfcast/core/ids.hpp"
#include "dfcast/nn/train.hpp"
#include "dfcast/pipeline/scaler.hpp"

namespace dfcast::nn {

inline constexpr int kModelFormatVersion = 1;

/// A trained network plus everything needed to forecast with it: the series
/// it emits forecasts for (one block of `horizon` outputs each, in order),
/// the feature columns it reads per series, and each series' scaler.
struct TrainedModel {
  std::string name = "LSTM";
  TrainedNetwork network;
  std::vector<SeriesKey> series;
  std::vector<std::string> feature_columns;
  std::vector<pipeline::MinMaxScaler> scalers;  // parallel to series
};

void save_model(const TrainedModel& model, std::ostream& out);
TrainedModel load_model(std::istream& in);
void save_model(const TrainedModel& model, const std::filesystem::path& path);
TrainedModel load_model(const std::filesystem::path& path);

}  // namespace dfcast::nn
