#include "freqtune/statevector.hpp"

#include <string>

#include "freqtune/errors.hpp"

namespace freqtune {

double Statevector::norm_error() const {
  return std::abs(amplitudes.squaredNorm() - 1.0);
}

Statevector statevector_zero(int q) {
  if (q < 1 || q > 12)
    throw ConfigError("statevector_zero: qubit count must be in [1, 12], got " +
                      std::to_string(q));
  Statevector s;
  s.qubits = q;
  s.amplitudes = Eigen::VectorXcd::Zero(1LL << q);
  s.amplitudes(0) = 1.0;
  return s;
}

double UnitaryGate::unitarity_error() const {
  const Eigen::MatrixXcd d =
      matrix * matrix.adjoint() -
      Eigen::MatrixXcd::Identity(matrix.rows(), matrix.cols());
  return d.cwiseAbs().maxCoeff();
}

Statevector apply_gate(const Statevector& state, const UnitaryGate& gate) {
  const int q = state.qubits;
  const int a = gate.arity();
  if (a == 0) throw DimensionError("apply_gate: gate has no targets");
  if (gate.matrix.rows() != (1LL << a) || gate.matrix.cols() != (1LL << a))
    throw DimensionError("apply_gate: matrix size does not match arity");
  std::uint64_t seen = 0;
  for (int t : gate.targets) {
    if (t < 0 || t >= q)
      throw DimensionError("apply_gate: target qubit " + std::to_string(t) +
                           " out of range for " + std::to_string(q) +
                           " qubits");
    const std::uint64_t bit = 1ULL << t;
    if (seen & bit)
      throw DimensionError("apply_gate: duplicate target qubit");
    seen |= bit;
  }

  const std::uint64_t dim = 1ULL << q;
  const std::uint64_t sub = 1ULL << a;
  // Bit position (from LSB) of target j in the full index.
  std::vector<int> pos(a);
  std::uint64_t target_mask = 0;
  for (int j = 0; j < a; ++j) {
    pos[j] = q - 1 - gate.targets[j];
    target_mask |= 1ULL << pos[j];
  }

  Statevector out = state;
  Eigen::VectorXcd chunk(sub), mixed(sub);
  for (std::uint64_t base = 0; base < dim; ++base) {
    if (base & target_mask) continue;  // enumerate rest-bits only
    for (std::uint64_t g = 0; g < sub; ++g) {
      std::uint64_t idx = base;
      for (int j = 0; j < a; ++j)
        if ((g >> (a - 1 - j)) & 1ULL) idx |= 1ULL << pos[j];
      chunk(g) = state.amplitudes(idx);
    }
    mixed.noalias() = gate.matrix * chunk;
    for (std::uint64_t g = 0; g < sub; ++g) {
      std::uint64_t idx = base;
      for (int j = 0; j < a; ++j)
        if ((g >> (a - 1 - j)) & 1ULL) idx |= 1ULL << pos[j];
      out.amplitudes(idx) = mixed(g);
    }
  }
  return out;
}

double expectation_z(const Statevector& state, int qubit) {
  const int q = state.qubits;
  if (qubit < 0 || qubit >= q)
    throw DimensionError("expectation_z: qubit index out of range");
  const std::uint64_t bit = 1ULL << (q - 1 - qubit);
  const std::uint64_t dim = static_cast<std::uint64_t>(state.amplitudes.size());
  double value = 0.0;
  for (std::uint64_t i = 0; i < dim; ++i) {
    const double p = std::norm(state.amplitudes(i));
    value += (i & bit) ? -p : p;
  }
  return value;
}

}  // namespace freqtune
