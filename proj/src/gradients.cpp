#include "freqtune/gradients.hpp"

#include <cmath>
#include <complex>

#include "freqtune/errors.hpp"
#include "freqtune/optim.hpp"

namespace freqtune {

namespace {

using cd = std::complex<double>;

constexpr double kDegenerateEigenvalueGap = 1e-12;

/// Divided-difference matrix of exp(i lambda):
/// Gamma_ab = (e^{i la} - e^{i lb}) / (i (la - lb)), with the analytic limit
/// e^{i la} once |la - lb| drops below the degeneracy threshold. Evaluated
/// in the equivalent midpoint form e^{i(la+lb)/2} sinc((la-lb)/2), which is
/// uniformly accurate near crossings.
Eigen::MatrixXcd divided_difference(const Eigen::VectorXd& lambda) {
  const Eigen::Index n = lambda.size();
  Eigen::MatrixXcd gamma(n, n);
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = 0; b < n; ++b) {
      const double gap = lambda(a) - lambda(b);
      const cd mid = std::polar(1.0, 0.5 * (lambda(a) + lambda(b)));
      if (std::abs(gap) < kDegenerateEigenvalueGap) {
        gamma(a, b) = mid;
      } else {
        gamma(a, b) = mid * (std::sin(0.5 * gap) / (0.5 * gap));
      }
    }
  }
  return gamma;
}

/// Applies a per-column encoding rotation to one qubit of every column.
void apply_encoding_batch(Eigen::MatrixXcd& states, int qubits, int target,
                          PauliAxis axis, double alpha,
                          std::span<const double> xs, bool adjoint) {
  const std::uint64_t dim = 1ULL << qubits;
  const std::uint64_t bit = 1ULL << (qubits - 1 - target);
  for (Eigen::Index col = 0; col < states.cols(); ++col) {
    Eigen::Matrix2cd u = encoding_matrix(alpha, xs[col], axis);
    if (adjoint) u = u.adjoint().eval();
    for (std::uint64_t i = 0; i < dim; ++i) {
      if (i & bit) continue;
      const cd a = states(i, col);
      const cd b = states(i | bit, col);
      states(i, col) = u(0, 0) * a + u(0, 1) * b;
      states(i | bit, col) = u(1, 0) * a + u(1, 1) * b;
    }
  }
}

/// z_col = <b_col| sigma_target |s_col> for every column.
Eigen::VectorXcd pauli_bilinear_batch(const Eigen::MatrixXcd& bras,
                                      const Eigen::MatrixXcd& kets, int qubits,
                                      int target, PauliAxis axis) {
  const std::uint64_t dim = 1ULL << qubits;
  const std::uint64_t bit = 1ULL << (qubits - 1 - target);
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(bras.cols());
  for (Eigen::Index col = 0; col < bras.cols(); ++col) {
    cd z = 0.0;
    for (std::uint64_t r = 0; r < dim; ++r) {
      const std::uint64_t flipped = r ^ bit;
      cd v;
      switch (axis) {
        case PauliAxis::X:
          v = kets(flipped, col);
          break;
        case PauliAxis::Y:
          v = (r & bit) ? cd(0, 1) * kets(flipped, col)
                        : cd(0, -1) * kets(flipped, col);
          break;
        case PauliAxis::Z:
          v = (r & bit) ? -kets(r, col) : kets(r, col);
          break;
      }
      z += std::conj(bras(r, col)) * v;
    }
    out(col) = z;
  }
  return out;
}

}  // namespace

GradientBundle GradientBundle::zeros_like(const Model& model) {
  GradientBundle g;
  g.d_alpha.assign(model.alpha.size(), 0.0);
  g.d_theta.assign(model.theta.size(),
                   Eigen::VectorXd::Zero(model.config.theta_len()));
  return g;
}

ForwardCache forward_batched(const CompiledCircuit& circuit,
                             std::span<const double> xs) {
  const Eigen::Index n = static_cast<Eigen::Index>(xs.size());
  ForwardCache cache;
  cache.xs.assign(xs.begin(), xs.end());
  cache.states.reserve(circuit.gates.size() + 1);

  Eigen::MatrixXcd state = Eigen::MatrixXcd::Zero(circuit.dim(), n);
  state.row(0).setOnes();
  cache.states.push_back(state);
  for (const CompiledGate& g : circuit.gates) {
    if (g.kind == CompiledGate::Kind::Ansatz) {
      state = g.unitary * state;
    } else {
      apply_encoding_batch(state, circuit.qubits(), g.target,
                           circuit.config.axis,
                           circuit.alpha[g.alpha_index], xs,
                           /*adjoint=*/false);
    }
    cache.states.push_back(state);
  }
  return cache;
}

Eigen::VectorXd values_from_cache(const CompiledCircuit& circuit,
                                  const ForwardCache& cache) {
  const Eigen::MatrixXcd& final_state = cache.states.back();
  const std::uint64_t bit =
      1ULL << (circuit.qubits() - 1 - circuit.config.observable_qubit);
  Eigen::VectorXd values = Eigen::VectorXd::Zero(final_state.cols());
  for (Eigen::Index col = 0; col < final_state.cols(); ++col) {
    double v = 0.0;
    for (Eigen::Index r = 0; r < final_state.rows(); ++r) {
      const double p = std::norm(final_state(r, col));
      v += (static_cast<std::uint64_t>(r) & bit) ? -p : p;
    }
    values(col) = v;
  }
  return values;
}

GradientBundle backward_weighted(const CompiledCircuit& circuit,
                                 const ForwardCache& cache,
                                 const Eigen::VectorXd& weights) {
  const int q = circuit.qubits();
  const std::uint64_t obs_bit =
      1ULL << (q - 1 - circuit.config.observable_qubit);

  GradientBundle grad;
  grad.d_alpha.assign(circuit.alpha.size(), 0.0);
  grad.d_theta.assign(circuit.config.ansatz_blocks,
                      Eigen::VectorXd::Zero(circuit.config.theta_len()));

  // Adjoint state b = Z |psi_final>, unwound gate by gate. For gate j the
  // weighted partials are sum_col w_col * 2 Re <b_col| dG |s_col^{before}>.
  Eigen::MatrixXcd b = cache.states.back();
  for (Eigen::Index r = 0; r < b.rows(); ++r)
    if (static_cast<std::uint64_t>(r) & obs_bit) b.row(r) = -b.row(r);

  const auto& words = pauli_basis(q);
  for (int j = static_cast<int>(circuit.gates.size()) - 1; j >= 0; --j) {
    const CompiledGate& g = circuit.gates[j];
    const Eigen::MatrixXcd& before = cache.states[j];

    if (g.kind == CompiledGate::Kind::Encoding) {
      // dR/d_alpha = (-i x sigma / 2) R, so the partial reduces to
      // x * Im <b | sigma | s_after> per sample.
      const Eigen::MatrixXcd& after = cache.states[j + 1];
      const Eigen::VectorXcd z = pauli_bilinear_batch(
          b, after, q, g.target, circuit.config.axis);
      double acc = 0.0;
      for (Eigen::Index col = 0; col < z.size(); ++col)
        acc += weights(col) * cache.xs[col] * z(col).imag();
      grad.d_alpha[g.alpha_index] += acc;
      apply_encoding_batch(b, q, g.target, circuit.config.axis,
                           circuit.alpha[g.alpha_index], cache.xs,
                           /*adjoint=*/true);
    } else {
      // Daleckii-Krein: dW/d_theta_m = V (Gamma . (V^dag i P_m V)) V^dag.
      // Folding the weighted sample sum first leaves a single
      // C = conj(U_b) diag(w) U_s^T per block, then one sparse Pauli pass:
      //   dL/d_theta_m = 2 Re sum_r i v_m(r) M(r, r ^ flip_m),
      //   M = conj(V) (Gamma . C) V^T.
      const Eigen::MatrixXcd ub = g.eigvecs.adjoint() * b;
      const Eigen::MatrixXcd us = g.eigvecs.adjoint() * before;
      const Eigen::MatrixXcd c =
          ub.conjugate() * weights.asDiagonal() * us.transpose();
      const Eigen::MatrixXcd gamma = divided_difference(g.eigvals);
      const Eigen::MatrixXcd m =
          g.eigvecs.conjugate() * gamma.cwiseProduct(c) * g.eigvecs.transpose();

      Eigen::VectorXd& dtheta = grad.d_theta[g.theta_block];
      for (std::size_t widx = 0; widx < words.size(); ++widx) {
        const PauliWord& word = words[widx];
        cd s = 0.0;
        for (std::uint64_t r = 0; r < (1ULL << q); ++r)
          s += word.value(r) * m(r, r ^ word.flip_mask);
        dtheta(static_cast<Eigen::Index>(widx)) += 2.0 * (cd(0, 1) * s).real();
      }
      b = g.unitary.adjoint() * b;
    }
  }
  return grad;
}

std::pair<double, GradientBundle> grad_forward(const Model& model, double x) {
  if (!std::isfinite(x)) throw DomainError("grad_forward: x must be finite");
  const CompiledCircuit cc = compile(model);
  const double xs[1] = {x};
  const ForwardCache cache = forward_batched(cc, xs);
  const Eigen::VectorXd values = values_from_cache(cc, cache);
  Eigen::VectorXd weights(1);
  weights(0) = 1.0;
  return {values(0), backward_weighted(cc, cache, weights)};
}

std::pair<double, GradientBundle> loss_and_grad(const Model& model,
                                                std::span<const double> xs,
                                                std::span<const double> ys) {
  if (xs.empty()) throw ConfigError("loss_and_grad: empty dataset");
  if (xs.size() != ys.size())
    throw DimensionError("loss_and_grad: xs and ys lengths differ");
  const CompiledCircuit cc = compile(model);
  const ForwardCache cache = forward_batched(cc, xs);
  const Eigen::VectorXd values = values_from_cache(cc, cache);

  const double n = static_cast<double>(xs.size());
  double loss = 0.0;
  Eigen::VectorXd weights(values.size());
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    const double err = values(i) - ys[i];
    loss += err * err;
    weights(i) = 2.0 * err / n;
  }
  loss /= n;
  return {loss, backward_weighted(cc, cache, weights)};
}

std::vector<GradientSweepRow> gradient_sweep(
    const TargetSpec& target, const std::vector<double>& alpha_grid,
    const CircuitConfig& config, double learning_rate, std::uint64_t seed) {
  if (alpha_grid.empty())
    throw ConfigError("gradient_sweep: alpha grid must be nonempty");

  const Dataset dataset = sample_dataset(target, 100);
  const SplitDataset sp = split(dataset, 0.8, seed);
  std::vector<double> xs, ys;
  xs.reserve(sp.train.size());
  ys.reserve(sp.train.size());
  for (int idx : sp.train) {
    xs.push_back(dataset.xs[idx]);
    ys.push_back(dataset.ys[idx]);
  }

  TrainConfig tc;
  tc.learning_rate = learning_rate;
  tc.seed = seed;

  std::vector<GradientSweepRow> rows;
  rows.reserve(alpha_grid.size());
  for (double alpha0 : alpha_grid) {
    CircuitConfig cfg = config;
    cfg.init = InitStrategy::unary_trainable(
        std::vector<double>(config.encoding_gates, alpha0));
    Model model = build_model(cfg);

    AdamState state = AdamState::zeros_like(model);
    auto [loss0, grad0] = loss_and_grad(model, xs, ys);
    (void)loss0;
    adam_step(model, grad0, state, tc);

    auto [loss1, grad1] = loss_and_grad(model, xs, ys);
    (void)loss1;
    GradientSweepRow row;
    row.alpha0 = alpha0;
    row.d_alpha = grad1.d_alpha;
    double acc = 0.0;
    for (double d : grad1.d_alpha) acc += std::abs(d);
    row.mean_abs = acc / static_cast<double>(grad1.d_alpha.size());
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace freqtune
