#pragma once

#include <Eigen/Dense>
#include <span>
#include <utility>
#include <vector>

#include "freqtune/model.hpp"
#include "freqtune/targets.hpp"

namespace freqtune {

/// Partial derivatives shaped exactly like the model parameters.
struct GradientBundle {
  std::vector<double> d_alpha;
  std::vector<Eigen::VectorXd> d_theta;

  static GradientBundle zeros_like(const Model& model);
};

/// Value and exact gradient of f at one input.
///
/// Prefactor partials follow from d/d_alpha R(alpha x) =
/// (-i x sigma / 2) R(alpha x), propagated through the circuit by one
/// cached forward sweep and one adjoint sweep. Ansatz partials use the
/// Daleckii-Krein divided differences of exp(iH) on the cached
/// eigendecomposition (see backward_weighted in the implementation).
std::pair<double, GradientBundle> grad_forward(const Model& model, double x);

/// Full-batch MSE loss and its exact gradient: the mean of per-sample
/// chain-ruled gradients accumulated in a fixed order.
std::pair<double, GradientBundle> loss_and_grad(const Model& model,
                                                std::span<const double> xs,
                                                std::span<const double> ys);

/// One row of the prefactor-gradient sweep.
struct GradientSweepRow {
  double alpha0 = 0.0;               // shared initial prefactor value
  std::vector<double> d_alpha;       // loss gradient wrt each prefactor
  double mean_abs = 0.0;             // mean |d_alpha|
};

/// For each grid value: initialize every prefactor at that value, take one
/// Adam step on the full training split, then record the prefactor gradient
/// magnitudes at the stepped point.
std::vector<GradientSweepRow> gradient_sweep(
    const TargetSpec& target, const std::vector<double>& alpha_grid,
    const CircuitConfig& config, double learning_rate, std::uint64_t seed);

// --- batched internals, exposed for the training loop ---

/// States cached at every gate boundary for a batch of inputs (dim x n
/// matrices; states[0] is the initial |0...0> column batch).
struct ForwardCache {
  std::vector<Eigen::MatrixXcd> states;
  std::vector<double> xs;
};

ForwardCache forward_batched(const CompiledCircuit& circuit,
                             std::span<const double> xs);

/// Model outputs for every cached column.
Eigen::VectorXd values_from_cache(const CompiledCircuit& circuit,
                                  const ForwardCache& cache);

/// sum_j weights[j] * grad f(xs[j]) via the adjoint sweep.
GradientBundle backward_weighted(const CompiledCircuit& circuit,
                                 const ForwardCache& cache,
                                 const Eigen::VectorXd& weights);

}  // namespace freqtune
