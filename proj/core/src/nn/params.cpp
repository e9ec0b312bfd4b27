#include "dfcast/nn/params.hpp"

#include <cmath>

#include "dfcast/error.hpp"

namespace dfcast::nn {
namespace {

void glorot(Eigen::Ref<Eigen::MatrixXd> m, double fan_in, double fan_out, std::mt19937_64& rng) {
  const double limit = std::sqrt(6.0 / (fan_in + fan_out));
  std::uniform_real_distribution<double> dist(-limit, limit);
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) m(r, c) = dist(rng);
  }
}

template <class M>
std::span<double> view(M& m) {
  return {m.data(), static_cast<std::size_t>(m.size())};
}

template <class M>
std::span<const double> cview(const M& m) {
  return {m.data(), static_cast<std::size_t>(m.size())};
}

}  // namespace

void ModelConfig::validate() const {
  auto fail = [](const std::string& what) { throw Error(Errc::config, what); };
  if (lstm_units < 1) fail("lstm_units must be >= 1");
  if (dense_units.size() != dropout_enabled.size()) {
    fail("dropout_enabled must have one flag per dense layer");
  }
  for (int u : dense_units) {
    if (u < 1) fail("dense_units entries must be >= 1");
  }
  if (!(dropout_rate >= 0.0 && dropout_rate < 1.0)) fail("dropout_rate must be in [0, 1)");
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) fail("learning_rate must be > 0");
  if (batch_size < 1) fail("batch_size must be >= 1");
  if (max_epochs < 1) fail("max_epochs must be >= 1");
  if (patience < 1) fail("patience must be >= 1");
  if (input_window < 1 || horizon < 1) fail("input_window and horizon must be >= 1");
}

std::vector<std::span<double>> Parameters::tensors() {
  std::vector<std::span<double>> out{view(lstm.input_weights), view(lstm.recurrent_weights),
                                     view(lstm.bias)};
  for (auto& layer : head) {
    out.push_back(view(layer.weights));
    out.push_back(view(layer.bias));
  }
  return out;
}

std::vector<std::span<const double>> Parameters::tensors() const {
  std::vector<std::span<const double>> out{cview(lstm.input_weights),
                                           cview(lstm.recurrent_weights), cview(lstm.bias)};
  for (const auto& layer : head) {
    out.push_back(cview(layer.weights));
    out.push_back(cview(layer.bias));
  }
  return out;
}

Parameters Parameters::zeros_like() const {
  Parameters z = *this;
  for (auto t : z.tensors()) std::fill(t.begin(), t.end(), 0.0);
  return z;
}

std::size_t Parameters::parameter_count() const {
  std::size_t n = 0;
  for (auto t : tensors()) n += t.size();
  return n;
}

Parameters init_parameters(const ModelConfig& config, Eigen::Index n_features,
                           Eigen::Index n_outputs, std::mt19937_64& rng) {
  config.validate();
  const Eigen::Index h = config.lstm_units;
  Parameters p;
  p.lstm.input_weights.resize(4 * h, n_features);
  p.lstm.recurrent_weights.resize(4 * h, h);
  for (Eigen::Index g = 0; g < 4; ++g) {
    glorot(p.lstm.input_weights.middleRows(g * h, h), double(n_features), double(h), rng);
    glorot(p.lstm.recurrent_weights.middleRows(g * h, h), double(h), double(h), rng);
  }
  p.lstm.bias = Eigen::VectorXd::Zero(4 * h);
  p.lstm.bias.segment(h, h).setOnes();

  Eigen::Index in = h;
  for (std::size_t l = 0; l < config.dense_units.size(); ++l) {
    DenseParams layer;
    const Eigen::Index out = config.dense_units[l];
    layer.weights.resize(out, in);
    glorot(layer.weights, double(in), double(out), rng);
    layer.bias = Eigen::VectorXd::Zero(out);
    layer.activation = Activation::relu;
    layer.dropout = config.dropout_enabled[l];
    p.head.push_back(std::move(layer));
    in = out;
  }
  DenseParams output;
  output.weights.resize(n_outputs, in);
  glorot(output.weights, double(in), double(n_outputs), rng);
  output.bias = Eigen::VectorXd::Zero(n_outputs);
  output.activation = Activation::linear;
  p.head.push_back(std::move(output));
  return p;
}

}  // namespace dfcast::nn
