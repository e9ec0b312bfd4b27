#include "dfcast/nn/lstm.hpp"

#include "dfcast/error.hpp"
#include "dfcast/nn/network.hpp"

namespace dfcast::nn {

LstmOutput lstm_forward(const Eigen::MatrixXd& x_seq, const LstmParams& params) {
  if (x_seq.cols() != params.features()) {
    throw Error(Errc::shape, "lstm_forward: expected " + std::to_string(params.features()) +
                                 " features, got " + std::to_string(x_seq.cols()));
  }
  if (!x_seq.allFinite()) throw Error(Errc::numeric, "lstm_forward: non-finite input");

  Parameters only_lstm{params, {}};
  std::vector<Eigen::MatrixXd> steps;
  steps.reserve(static_cast<std::size_t>(x_seq.rows()));
  for (Eigen::Index t = 0; t < x_seq.rows(); ++t) steps.emplace_back(x_seq.row(t).transpose());

  ForwardCache cache;
  forward_batch(only_lstm, steps, &cache);

  const Eigen::Index h = params.hidden();
  LstmOutput out;
  out.hidden_sequence.resize(x_seq.rows(), h);
  for (Eigen::Index t = 0; t < x_seq.rows(); ++t) {
    out.hidden_sequence.row(t) = cache.hidden[static_cast<std::size_t>(t + 1)].col(0).transpose();
  }
  out.final_hidden = cache.hidden.back().col(0);
  out.final_cell = cache.cell.back().col(0);
  return out;
}

}  // namespace dfcast::nn
