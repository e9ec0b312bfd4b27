#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "dfcast/nn/params.hpp"
#include "dfcast/pipeline/windows.hpp"

namespace dfcast::nn {

struct EpochRecord {
  int epoch = 0;
  double train_loss = 0.0;
  double val_loss = 0.0;
};

/// Test seams. `validation_loss` may replace the computed validation loss
/// of each epoch; `on_epoch_end` observes the weights after each epoch.
struct TrainHooks {
  std::function<double(int epoch, double computed)> validation_loss;
  std::function<void(int epoch, const Parameters& params)> on_epoch_end;
};

struct TrainOptions {
  /// Start from these weights instead of a fresh initialization.
  std::optional<Parameters> warm_start;
  /// Treat the starting weights as an epoch-0 checkpoint, so training can
  /// never return something worse on validation than what it started from.
  bool initial_checkpoint = false;
  TrainHooks hooks;
};

struct TrainedNetwork {
  ModelConfig config;
  Parameters params;  // weights of best_epoch
  int best_epoch = 0;
  std::vector<EpochRecord> history;
};

/// Mini-batch Adam on batch-mean MSE, reshuffled every epoch from
/// config.rng_seed, with early stopping on validation MSE. Throws
/// Errc::empty_input for empty sample sets and TrainingDiverged when a loss
/// turns non-finite.
TrainedNetwork train(const ModelConfig& config, std::span<const pipeline::WindowedSample> train,
                     std::span<const pipeline::WindowedSample> validation,
                     const TrainOptions& options = {});

}  // namespace dfcast::nn
