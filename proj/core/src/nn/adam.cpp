#include "dfcast/nn/adam.hpp"

#include <cmath>

#include "dfcast/error.hpp"

namespace dfcast::nn {

AdamState AdamState::for_parameters(const Parameters& params) {
  AdamState s;
  for (auto t : params.tensors()) {
    s.first_moment.emplace_back(t.size(), 0.0);
    s.second_moment.emplace_back(t.size(), 0.0);
  }
  return s;
}

void adam_update(std::span<double> param, std::span<const double> grad, std::span<double> m,
                 std::span<double> v, long step, double learning_rate,
                 const AdamSettings& settings) {
  if (step < 1) throw Error(Errc::config, "Adam step counter must be >= 1");
  const double c1 = 1.0 - std::pow(settings.beta1, static_cast<double>(step));
  const double c2 = 1.0 - std::pow(settings.beta2, static_cast<double>(step));
  for (std::size_t i = 0; i < param.size(); ++i) {
    m[i] = settings.beta1 * m[i] + (1.0 - settings.beta1) * grad[i];
    v[i] = settings.beta2 * v[i] + (1.0 - settings.beta2) * grad[i] * grad[i];
    const double m_hat = m[i] / c1;
    const double v_hat = v[i] / c2;
    param[i] -= learning_rate * m_hat / (std::sqrt(v_hat) + settings.epsilon);
  }
}

void adam_step(Parameters& params, const Parameters& grads, AdamState& state,
               double learning_rate, const AdamSettings& settings) {
  auto p = params.tensors();
  auto g = grads.tensors();
  if (p.size() != g.size() || p.size() != state.first_moment.size()) {
    throw Error(Errc::shape, "adam_step: parameter, gradient and state layouts differ");
  }
  ++state.step;
  for (std::size_t i = 0; i < p.size(); ++i) {
    adam_update(p[i], g[i], state.first_moment[i], state.second_moment[i], state.step,
                learning_rate, settings);
  }
}

}  // namespace dfcast::nn
