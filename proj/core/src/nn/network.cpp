#include "dfcast/nn/network.hpp"

#include <numeric>

#include "dfcast/error.hpp"
#include "dfcast/nn/dropout.hpp"

namespace dfcast::nn {
namespace {

Eigen::MatrixXd sigmoid(const Eigen::MatrixXd& z) {
  return (1.0 + (-z.array()).exp()).inverse().matrix();
}

}  // namespace

std::vector<Eigen::MatrixXd> stack_inputs(std::span<const pipeline::WindowedSample> samples,
                                          std::span<const std::size_t> indices) {
  if (indices.empty()) return {};
  const auto& first = samples[indices.front()].input;
  const Eigen::Index steps = first.rows();
  const Eigen::Index features = first.cols();
  const auto batch = static_cast<Eigen::Index>(indices.size());
  std::vector<Eigen::MatrixXd> out(static_cast<std::size_t>(steps),
                                   Eigen::MatrixXd(features, batch));
  for (Eigen::Index b = 0; b < batch; ++b) {
    const auto& x = samples[indices[static_cast<std::size_t>(b)]].input;
    if (x.rows() != steps || x.cols() != features) {
      throw Error(Errc::shape, "samples in a batch have different window shapes");
    }
    for (Eigen::Index t = 0; t < steps; ++t) {
      out[static_cast<std::size_t>(t)].col(b) = x.row(t).transpose();
    }
  }
  return out;
}

Eigen::MatrixXd stack_targets(std::span<const pipeline::WindowedSample> samples,
                              std::span<const std::size_t> indices) {
  if (indices.empty()) return {};
  const Eigen::Index k = samples[indices.front()].target.size();
  Eigen::MatrixXd out(k, static_cast<Eigen::Index>(indices.size()));
  for (std::size_t b = 0; b < indices.size(); ++b) {
    const auto& y = samples[indices[b]].target;
    if (y.size() != k) throw Error(Errc::shape, "samples in a batch have different target sizes");
    out.col(static_cast<Eigen::Index>(b)) = y;
  }
  return out;
}

Eigen::MatrixXd forward_batch(const Parameters& params, const std::vector<Eigen::MatrixXd>& steps,
                              ForwardCache* cache, const DropoutContext* dropout) {
  if (steps.empty()) throw Error(Errc::shape, "forward: empty input sequence");
  const Eigen::Index h = params.lstm.hidden();
  const Eigen::Index batch = steps.front().cols();
  if (steps.front().rows() != params.lstm.features()) {
    throw Error(Errc::shape, "forward: expected " + std::to_string(params.lstm.features()) +
                                 " features, got " + std::to_string(steps.front().rows()));
  }

  Eigen::MatrixXd hidden = Eigen::MatrixXd::Zero(h, batch);
  Eigen::MatrixXd cell = Eigen::MatrixXd::Zero(h, batch);
  if (cache) {
    *cache = ForwardCache{};
    cache->inputs = steps;
    cache->hidden.reserve(steps.size() + 1);
    cache->cell.reserve(steps.size() + 1);
    cache->gates.reserve(steps.size());
    cache->hidden.push_back(hidden);
    cache->cell.push_back(cell);
  }

  Eigen::MatrixXd z(4 * h, batch);
  for (const auto& x : steps) {
    z.noalias() = params.lstm.input_weights * x;
    z.noalias() += params.lstm.recurrent_weights * hidden;
    z.colwise() += params.lstm.bias;
    z.topRows(2 * h) = sigmoid(z.topRows(2 * h));
    z.middleRows(2 * h, h) = z.middleRows(2 * h, h).array().tanh().matrix();
    z.bottomRows(h) = sigmoid(z.bottomRows(h));

    cell = z.middleRows(h, h).cwiseProduct(cell) + z.topRows(h).cwiseProduct(z.middleRows(2 * h, h));
    hidden = z.bottomRows(h).cwiseProduct(cell.array().tanh().matrix());
    if (cache) {
      cache->gates.push_back(z);
      cache->cell.push_back(cell);
      cache->hidden.push_back(hidden);
    }
  }

  Eigen::MatrixXd activation = std::move(hidden);
  for (const auto& layer : params.head) {
    if (layer.weights.cols() != activation.rows()) {
      throw Error(Errc::shape, "forward: head layer input size mismatch");
    }
    Eigen::MatrixXd pre = layer.weights * activation;
    pre.colwise() += layer.bias;
    Eigen::MatrixXd out = layer.activation == Activation::relu ? pre.cwiseMax(0.0) : pre;
    Eigen::MatrixXd mask;
    if (dropout && dropout->rng && layer.dropout && dropout->rate > 0.0) {
      mask = dropout_mask(out.rows(), out.cols(), dropout->rate, *dropout->rng);
      out = out.cwiseProduct(mask);
    }
    if (cache) {
      cache->layer_inputs.push_back(std::move(activation));
      cache->layer_preactivations.push_back(std::move(pre));
      cache->dropout_masks.push_back(std::move(mask));
    }
    activation = std::move(out);
  }
  return activation;
}

Parameters backward_batch(const Parameters& params, const ForwardCache& cache,
                          const Eigen::MatrixXd& d_output) {
  Parameters grads = params.zeros_like();
  const Eigen::Index h = params.lstm.hidden();

  Eigen::MatrixXd d_act = d_output;
  for (std::size_t li = params.head.size(); li-- > 0;) {
    const auto& layer = params.head[li];
    Eigen::MatrixXd dz = d_act;
    const auto& mask = cache.dropout_masks[li];
    if (mask.size() > 0) dz = dz.cwiseProduct(mask);
    if (layer.activation == Activation::relu) {
      dz = (cache.layer_preactivations[li].array() > 0.0).select(dz, 0.0);
    }
    grads.head[li].weights.noalias() = dz * cache.layer_inputs[li].transpose();
    grads.head[li].bias = dz.rowwise().sum();
    d_act.noalias() = layer.weights.transpose() * dz;
  }

  Eigen::MatrixXd dh = std::move(d_act);
  Eigen::MatrixXd dc = Eigen::MatrixXd::Zero(h, dh.cols());
  Eigen::MatrixXd dz(4 * h, dh.cols());
  for (std::size_t t = cache.gates.size(); t-- > 0;) {
    const auto& g = cache.gates[t];
    const auto i_gate = g.topRows(h).array();
    const auto f_gate = g.middleRows(h, h).array();
    const auto c_cand = g.middleRows(2 * h, h).array();
    const auto o_gate = g.bottomRows(h).array();
    const Eigen::ArrayXXd tanh_c = cache.cell[t + 1].array().tanh();

    dc.array() += dh.array() * o_gate * (1.0 - tanh_c.square());
    dz.topRows(h) = (dc.array() * c_cand * i_gate * (1.0 - i_gate)).matrix();
    dz.middleRows(h, h) = (dc.array() * cache.cell[t].array() * f_gate * (1.0 - f_gate)).matrix();
    dz.middleRows(2 * h, h) = (dc.array() * i_gate * (1.0 - c_cand.square())).matrix();
    dz.bottomRows(h) = (dh.array() * tanh_c * o_gate * (1.0 - o_gate)).matrix();

    grads.lstm.input_weights.noalias() += dz * cache.inputs[t].transpose();
    grads.lstm.recurrent_weights.noalias() += dz * cache.hidden[t].transpose();
    grads.lstm.bias += dz.rowwise().sum();

    dh.noalias() = params.lstm.recurrent_weights.transpose() * dz;
    dc.array() *= f_gate;
  }
  return grads;
}

Eigen::VectorXd forward(const Parameters& params, const Eigen::MatrixXd& x_seq) {
  if (x_seq.cols() != params.lstm.features()) {
    throw Error(Errc::shape, "forward: expected " + std::to_string(params.lstm.features()) +
                                 " features, got " + std::to_string(x_seq.cols()));
  }
  std::vector<Eigen::MatrixXd> steps;
  steps.reserve(static_cast<std::size_t>(x_seq.rows()));
  for (Eigen::Index t = 0; t < x_seq.rows(); ++t) steps.emplace_back(x_seq.row(t).transpose());
  return forward_batch(params, steps).col(0);
}

Eigen::MatrixXd predict(const Parameters& params, std::span<const pipeline::WindowedSample> samples) {
  Eigen::MatrixXd out(params.n_outputs(), static_cast<Eigen::Index>(samples.size()));
  constexpr std::size_t chunk = 256;
  std::vector<std::size_t> idx;
  for (std::size_t start = 0; start < samples.size(); start += chunk) {
    const std::size_t end = std::min(samples.size(), start + chunk);
    idx.resize(end - start);
    std::iota(idx.begin(), idx.end(), start);
    out.middleCols(static_cast<Eigen::Index>(start), static_cast<Eigen::Index>(end - start)) =
        forward_batch(params, stack_inputs(samples, idx));
  }
  return out;
}

double mse_loss(std::span<const double> pred, std::span<const double> target) {
  if (pred.size() != target.size()) throw Error(Errc::shape, "mse_loss: length mismatch");
  if (pred.empty()) throw Error(Errc::shape, "mse_loss: empty input");
  double sum = 0.0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    const double d = pred[i] - target[i];
    sum += d * d;
  }
  return sum / static_cast<double>(pred.size());
}

double mse_loss_with_gradient(const Eigen::MatrixXd& pred, const Eigen::MatrixXd& target,
                              Eigen::MatrixXd& d_pred) {
  if (pred.rows() != target.rows() || pred.cols() != target.cols()) {
    throw Error(Errc::shape, "mse_loss: shape mismatch");
  }
  const Eigen::MatrixXd diff = pred - target;
  const auto n = static_cast<double>(diff.size());
  d_pred = (2.0 / n) * diff;
  return diff.squaredNorm() / n;
}

double dataset_loss(const Parameters& params, std::span<const pipeline::WindowedSample> samples) {
  if (samples.empty()) throw Error(Errc::empty_input, "dataset_loss: no samples");
  const Eigen::MatrixXd pred = predict(params, samples);
  double sum = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    sum += (pred.col(static_cast<Eigen::Index>(i)) - samples[i].target).squaredNorm();
  }
  return sum / static_cast<double>(pred.size());
}

}  // namespace dfcast::nn
