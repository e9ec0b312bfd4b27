#include "dfcast/nn/dropout.hpp"

#include "dfcast/error.hpp"

namespace dfcast::nn {

Eigen::MatrixXd dropout_mask(Eigen::Index rows, Eigen::Index cols, double rate,
                             std::mt19937_64& rng) {
  if (!(rate >= 0.0 && rate < 1.0)) throw Error(Errc::config, "dropout rate must be in [0, 1)");
  const double keep_scale = 1.0 / (1.0 - rate);
  std::bernoulli_distribution drop(rate);
  Eigen::MatrixXd mask(rows, cols);
  for (Eigen::Index c = 0; c < cols; ++c) {
    for (Eigen::Index r = 0; r < rows; ++r) mask(r, c) = drop(rng) ? 0.0 : keep_scale;
  }
  return mask;
}

Eigen::MatrixXd dropout_apply(const Eigen::MatrixXd& activations, double rate, bool training,
                              std::mt19937_64& rng) {
  if (!(rate >= 0.0 && rate < 1.0)) throw Error(Errc::config, "dropout rate must be in [0, 1)");
  if (!training || rate == 0.0) return activations;
  return activations.cwiseProduct(dropout_mask(activations.rows(), activations.cols(), rate, rng));
}

}  // namespace dfcast::nn
