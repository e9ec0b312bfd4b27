#pragma once

#include <Eigen/Dense>

#include "dfcast/nn/params.hpp"

namespace dfcast::nn {

struct LstmOutput {
  Eigen::MatrixXd hidden_sequence;  // T x H
  Eigen::VectorXd final_hidden;
  Eigen::VectorXd final_cell;
};

/// Runs one sequence (T x F) from zero initial state. Throws Errc::numeric
/// on non-finite input and Errc::shape on a feature-count mismatch.
LstmOutput lstm_forward(const Eigen::MatrixXd& x_seq, const LstmParams& params);

}  // namespace dfcast::nn
