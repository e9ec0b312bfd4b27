#pragma once

#include <random>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "dfcast/nn/params.hpp"
#include "dfcast/pipeline/windows.hpp"

namespace dfcast::nn {

/// Intermediate values of a batched forward pass, kept for backward().
struct ForwardCache {
  std::vector<Eigen::MatrixXd> inputs;  // T of F x B
  std::vector<Eigen::MatrixXd> gates;   // T of 4H x B, activated
  std::vector<Eigen::MatrixXd> cell;    // T+1 of H x B, cell[0] = 0
  std::vector<Eigen::MatrixXd> hidden;  // T+1 of H x B, hidden[0] = 0
  std::vector<Eigen::MatrixXd> layer_inputs;
  std::vector<Eigen::MatrixXd> layer_preactivations;
  std::vector<Eigen::MatrixXd> dropout_masks;  // empty matrix where inactive
};

/// Training-mode dropout source; pass nullptr for inference.
struct DropoutContext {
  double rate = 0.0;
  std::mt19937_64* rng = nullptr;
};

/// Packs samples[indices] into T step matrices of shape F x B.
std::vector<Eigen::MatrixXd> stack_inputs(std::span<const pipeline::WindowedSample> samples,
                                          std::span<const std::size_t> indices);
/// K x B target matrix.
Eigen::MatrixXd stack_targets(std::span<const pipeline::WindowedSample> samples,
                              std::span<const std::size_t> indices);

/// Batched forward pass; returns the K x B output. Fills `cache` when given.
Eigen::MatrixXd forward_batch(const Parameters& params, const std::vector<Eigen::MatrixXd>& steps,
                              ForwardCache* cache = nullptr,
                              const DropoutContext* dropout = nullptr);

/// Gradients of a scalar loss w.r.t. every parameter, given dLoss/dOutput.
Parameters backward_batch(const Parameters& params, const ForwardCache& cache,
                          const Eigen::MatrixXd& d_output);

/// Inference on one window (T x F); dropout is the identity. Throws
/// Errc::shape on a feature-count mismatch.
Eigen::VectorXd forward(const Parameters& params, const Eigen::MatrixXd& x_seq);

/// Inference on many samples; returns K x N.
Eigen::MatrixXd predict(const Parameters& params, std::span<const pipeline::WindowedSample> samples);

/// Mean of squared componentwise differences. Throws Errc::shape on length mismatch.
double mse_loss(std::span<const double> pred, std::span<const double> target);

/// Batch-mean MSE over a K x B block and its gradient w.r.t. `pred`.
double mse_loss_with_gradient(const Eigen::MatrixXd& pred, const Eigen::MatrixXd& target,
                              Eigen::MatrixXd& d_pred);

/// Inference-mode MSE over a whole sample set.
double dataset_loss(const Parameters& params, std::span<const pipeline::WindowedSample> samples);

}  // namespace dfcast::nn
