#pragma once

#include <span>
#include <vector>

#include "dfcast/nn/params.hpp"

namespace dfcast::nn {

struct AdamSettings {
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

/// First and second moment estimates, one buffer per parameter tensor.
struct AdamState {
  std::vector<std::vector<double>> first_moment;
  std::vector<std::vector<double>> second_moment;
  long step = 0;

  static AdamState for_parameters(const Parameters& params);
};

/// Bias-corrected Adam update of one tensor at the given (1-based) step.
void adam_update(std::span<double> param, std::span<const double> grad, std::span<double> m,
                 std::span<double> v, long step, double learning_rate,
                 const AdamSettings& settings = {});

/// Advances state.step and updates every tensor.
void adam_step(Parameters& params, const Parameters& grads, AdamState& state,
               double learning_rate, const AdamSettings& settings = {});

}  // namespace dfcast::nn
