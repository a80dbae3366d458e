#include "freqtune/optim.hpp"

#include <cmath>

#include "freqtune/errors.hpp"

namespace freqtune {

void TrainConfig::validate() const {
  if (!(learning_rate > 0.0))
    throw ConfigError("train config: learning rate must be positive");
  if (iterations < 1)
    throw ConfigError("train config: need at least one iteration");
  if (!(adam_beta1 > 0.0 && adam_beta1 < 1.0) ||
      !(adam_beta2 > 0.0 && adam_beta2 < 1.0))
    throw ConfigError("train config: betas must lie in (0, 1)");
  if (record_every < 1)
    throw ConfigError("train config: record_every must be positive");
}

AdamState AdamState::zeros_like(const Model& model) {
  AdamState s;
  s.first_moment = GradientBundle::zeros_like(model);
  s.second_moment = GradientBundle::zeros_like(model);
  s.step_count = 0;
  return s;
}

namespace {

inline void update_scalar(double& param, double g, double& m, double& v,
                          double beta1, double beta2, double corr1,
                          double corr2, double lr, double eps) {
  m = beta1 * m + (1.0 - beta1) * g;
  v = beta2 * v + (1.0 - beta2) * g * g;
  const double mhat = m / corr1;
  const double vhat = v / corr2;
  param -= lr * mhat / (std::sqrt(vhat) + eps);
}

}  // namespace

void adam_step(Model& params, const GradientBundle& grads, AdamState& state,
               const TrainConfig& config) {
  if (grads.d_alpha.size() != params.alpha.size() ||
      grads.d_theta.size() != params.theta.size())
    throw DimensionError("adam_step: gradient shapes do not match parameters");

  state.step_count += 1;
  const double t = static_cast<double>(state.step_count);
  const double corr1 = 1.0 - std::pow(config.adam_beta1, t);
  const double corr2 = 1.0 - std::pow(config.adam_beta2, t);

  for (std::size_t i = 0; i < params.alpha.size(); ++i)
    update_scalar(params.alpha[i], grads.d_alpha[i],
                  state.first_moment.d_alpha[i],
                  state.second_moment.d_alpha[i], config.adam_beta1,
                  config.adam_beta2, corr1, corr2, config.learning_rate,
                  config.adam_eps);

  for (std::size_t blk = 0; blk < params.theta.size(); ++blk) {
    if (grads.d_theta[blk].size() != params.theta[blk].size())
      throw DimensionError("adam_step: theta block shape mismatch");
    for (Eigen::Index i = 0; i < params.theta[blk].size(); ++i)
      update_scalar(params.theta[blk](i), grads.d_theta[blk](i),
                    state.first_moment.d_theta[blk](i),
                    state.second_moment.d_theta[blk](i), config.adam_beta1,
                    config.adam_beta2, corr1, corr2, config.learning_rate,
                    config.adam_eps);
  }
}

}  // namespace freqtune
