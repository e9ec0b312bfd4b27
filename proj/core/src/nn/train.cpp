#include "dfcast/nn/train.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "dfcast/error.hpp"
#include "dfcast/nn/adam.hpp"
#include "dfcast/nn/network.hpp"

namespace dfcast::nn {

TrainedNetwork train(const ModelConfig& config, std::span<const pipeline::WindowedSample> train_set,
                     std::span<const pipeline::WindowedSample> validation,
                     const TrainOptions& options) {
  config.validate();
  if (train_set.empty() || validation.empty()) {
    throw Error(Errc::empty_input, "train: training and validation sets must be non-empty");
  }
  const Eigen::Index n_features = train_set.front().input.cols();
  const Eigen::Index n_outputs = train_set.front().target.size();

  std::mt19937_64 rng(config.rng_seed);
  TrainedNetwork result;
  result.config = config;
  Parameters params = options.warm_start ? *options.warm_start
                                         : init_parameters(config, n_features, n_outputs, rng);
  if (params.lstm.features() != n_features || params.n_outputs() != n_outputs) {
    throw Error(Errc::shape, "train: warm-start weights do not match the sample shapes");
  }

  double best_loss = std::numeric_limits<double>::infinity();
  Parameters best = params;
  if (options.initial_checkpoint) {
    best_loss = dataset_loss(params, validation);
    if (options.hooks.validation_loss) best_loss = options.hooks.validation_loss(0, best_loss);
  }

  AdamState adam = AdamState::for_parameters(params);
  const DropoutContext dropout{config.dropout_rate, &rng};
  std::vector<std::size_t> order(train_set.size());
  std::iota(order.begin(), order.end(), 0);
  const auto batch_size = static_cast<std::size_t>(config.batch_size);

  ForwardCache cache;
  Eigen::MatrixXd d_out;
  int stale_epochs = 0;
  for (int epoch = 1; epoch <= config.max_epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    double loss_sum = 0.0;
    for (std::size_t start = 0; start < order.size(); start += batch_size) {
      const std::span<const std::size_t> idx(order.data() + start,
                                             std::min(batch_size, order.size() - start));
      const Eigen::MatrixXd pred = forward_batch(params, stack_inputs(train_set, idx), &cache, &dropout);
      const double loss = mse_loss_with_gradient(pred, stack_targets(train_set, idx), d_out);
      loss_sum += loss * static_cast<double>(idx.size());
      adam_step(params, backward_batch(params, cache, d_out), adam, config.learning_rate);
    }
    const double train_loss = loss_sum / static_cast<double>(order.size());
    double val_loss = dataset_loss(params, validation);
    if (options.hooks.validation_loss) val_loss = options.hooks.validation_loss(epoch, val_loss);
    if (!std::isfinite(train_loss) || !std::isfinite(val_loss)) throw TrainingDiverged(epoch);

    result.history.push_back({epoch, train_loss, val_loss});
    if (options.hooks.on_epoch_end) options.hooks.on_epoch_end(epoch, params);

    if (val_loss < best_loss) {
      best_loss = val_loss;
      best = params;
      result.best_epoch = epoch;
      stale_epochs = 0;
    } else if (++stale_epochs >= config.patience) {
      break;
    }
  }
  result.params = std::move(best);
  return result;
}

}  // namespace dfcast::nn
