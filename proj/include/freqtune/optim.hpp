#pragma once

#include <cstdint>

#include "freqtune/gradients.hpp"
#include "freqtune/model.hpp"

namespace freqtune {

/// Optimizer settings for one run. The betas/epsilon defaults are the
/// conventional Adam values; the paper-scale runs use learning rate 0.001
/// for 5000 iterations.
struct TrainConfig {
  double learning_rate = 0.001;
  int iterations = 5000;
  double adam_beta1 = 0.9;
  double adam_beta2 = 0.999;
  double adam_eps = 1e-8;
  std::uint64_t seed = 0;  // recorded with the run; training itself is
                           // deterministic
  int record_every = 10;   // trajectory snapshot stride

  void validate() const;  // throws ConfigError
};

/// First/second moment estimates, shaped like the model parameters.
struct AdamState {
  GradientBundle first_moment;
  GradientBundle second_moment;
  int step_count = 0;

  static AdamState zeros_like(const Model& model);
};

/// One bias-corrected Adam update applied to every parameter (prefactors
/// and all ansatz blocks). Masking of frozen prefactors is the training
/// loop's job.
void adam_step(Model& params, const GradientBundle& grads, AdamState& state,
               const TrainConfig& config);

}  // namespace freqtune
