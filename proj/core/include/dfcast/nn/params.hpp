#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace dfcast::nn {

enum class Activation { relu, linear };

/// Hyperparameters of one network. Grid membership is checked by the tuner;
/// validate() only rejects structurally impossible settings.
struct ModelConfig {
  int lstm_units = 50;
  std::vector<int> dense_units{50};         // one entry per nonlinear layer
  std::vector<bool> dropout_enabled{false};  // parallel to dense_units
  double dropout_rate = 0.1;
  double learning_rate = 1e-3;
  int batch_size = 32;
  int max_epochs = 70;
  int patience = 5;
  int input_window = 36;
  int horizon = 6;
  std::uint64_t rng_seed = 0;

  int n_dense_layers() const { return static_cast<int>(dense_units.size()); }

  /// Throws Errc::config.
  void validate() const;

  bool operator==(const ModelConfig&) const = default;
};

/// Vanilla LSTM without peepholes. Gate blocks are stacked in the order
/// input, forget, candidate, output: rows [0,H), [H,2H), [2H,3H), [3H,4H).
struct LstmParams {
  Eigen::MatrixXd input_weights;      // 4H x F
  Eigen::MatrixXd recurrent_weights;  // 4H x H
  Eigen::VectorXd bias;               // 4H

  Eigen::Index hidden() const { return recurrent_weights.cols(); }
  Eigen::Index features() const { return input_weights.cols(); }
};

struct DenseParams {
  Eigen::MatrixXd weights;  // out x in
  Eigen::VectorXd bias;     // out
  Activation activation = Activation::linear;
  bool dropout = false;     // inverted dropout after the activation, training only
};

/// LSTM layer followed by ReLU layers and a final linear layer.
struct Parameters {
  LstmParams lstm;
  std::vector<DenseParams> head;

  Eigen::Index n_outputs() const { return head.back().bias.size(); }

  /// Flat views of every tensor in a fixed order (lstm W, R, b, then each
  /// head layer's weights and bias).
  std::vector<std::span<double>> tensors();
  std::vector<std::span<const double>> tensors() const;

  Parameters zeros_like() const;
  std::size_t parameter_count() const;
};

/// Glorot-uniform weights, zero biases except the forget gate (1.0).
Parameters init_parameters(const ModelConfig& config, Eigen::Index n_features,
                           Eigen::Index n_outputs, std::mt19937_64& rng);

}  // namespace dfcast::nn
