#pragma once

#include <random>

#include <Eigen/Dense>

namespace dfcast::nn {

/// Inverted dropout mask: each entry is 0 with probability `rate`, otherwise
/// 1 / (1 - rate). Throws Errc::config unless 0 <= rate < 1.
Eigen::MatrixXd dropout_mask(Eigen::Index rows, Eigen::Index cols, double rate,
                             std::mt19937_64& rng);

/// Identity when !training or rate == 0.
Eigen::MatrixXd dropout_apply(const Eigen::MatrixXd& activations, double rate, bool training,
                              std::mt19937_64& rng);

}  // namespace dfcast::nn
