#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "dfcast/nn/network.hpp"
#include "dfcast/nn/params.hpp"

namespace dfcast::testing {

struct GradCheckResult {
  double max_relative_error = 0.0;
  double max_absolute_error = 0.0;
  std::size_t checked = 0;
};

/// Random batch of `batch` windows (window x features) with 6 random targets each.
inline std::vector<pipeline::WindowedSample> random_samples(std::size_t batch, Eigen::Index window,
                                                            Eigen::Index features, Eigen::Index outputs,
                                                            std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<pipeline::WindowedSample> out(batch);
  for (auto& s : out) {
    s.input.resize(window, features);
    for (Eigen::Index i = 0; i < s.input.size(); ++i) s.input.data()[i] = u(rng);
    s.target.resize(outputs);
    for (Eigen::Index i = 0; i < outputs; ++i) s.target(i) = u(rng);
  }
  return out;
}

/// Compares backward_batch against central differences of the batch-mean MSE
/// for every scalar parameter. Relative error is |a - n| / max(|a|, |n|, floor).
inline GradCheckResult gradient_check(const nn::Parameters& params,
                                      const std::vector<pipeline::WindowedSample>& samples, double eps,
                                      double floor = 1e-6) {
  std::vector<std::size_t> idx(samples.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  const auto steps = nn::stack_inputs(samples, idx);
  const Eigen::MatrixXd target = nn::stack_targets(samples, idx);

  nn::ForwardCache cache;
  Eigen::MatrixXd d_out;
  const Eigen::MatrixXd pred = nn::forward_batch(params, steps, &cache);
  nn::mse_loss_with_gradient(pred, target, d_out);
  const nn::Parameters grads = nn::backward_batch(params, cache, d_out);

  auto loss_of = [&](const nn::Parameters& p) {
    Eigen::MatrixXd d;
    return nn::mse_loss_with_gradient(nn::forward_batch(p, steps), target, d);
  };

  GradCheckResult r;
  nn::Parameters probe = params;
  auto tensors = probe.tensors();
  const auto analytic = grads.tensors();
  for (std::size_t t = 0; t < tensors.size(); ++t) {
    for (std::size_t i = 0; i < tensors[t].size(); ++i) {
      const double original = tensors[t][i];
      tensors[t][i] = original + eps;
      const double up = loss_of(probe);
      tensors[t][i] = original - eps;
      const double down = loss_of(probe);
      tensors[t][i] = original;
      const double numeric = (up - down) / (2.0 * eps);
      const double a = analytic[t][i];
      const double abs_err = std::abs(a - numeric);
      r.max_absolute_error = std::max(r.max_absolute_error, abs_err);
      r.max_relative_error =
          std::max(r.max_relative_error, abs_err / std::max({std::abs(a), std::abs(numeric), floor}));
      ++r.checked;
    }
  }
  return r;
}

/// Glorot-initialised model with random (non-zero) biases so every gate and
/// bias gradient is exercised.
inline nn::Parameters random_model(int hidden, Eigen::Index features, std::vector<int> dense, Eigen::Index outputs,
                                   std::mt19937_64& rng) {
  nn::ModelConfig c;
  c.lstm_units = hidden;
  c.dense_units = dense;
  c.dropout_enabled.assign(dense.size(), false);
  auto p = nn::init_parameters(c, features, outputs, rng);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  for (Eigen::Index i = 0; i < p.lstm.bias.size(); ++i) p.lstm.bias(i) += u(rng);
  for (auto& layer : p.head) {
    for (Eigen::Index i = 0; i < layer.bias.size(); ++i) layer.bias(i) += u(rng);
  }
  return p;
}

}  // namespace dfcast::testing
