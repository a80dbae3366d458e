#pragma once

#include <Eigen/Dense>
#include <vector>

#include "freqtune/pauli.hpp"

namespace freqtune {

/// Pure state of `qubits` qubits. Qubit 0 is the leftmost tensor factor,
/// i.e. the most significant bit of the basis index: |b0 b1 ... b_{q-1}>
/// lives at index b0*2^{q-1} + ... + b_{q-1}.
struct Statevector {
  int qubits = 0;
  Eigen::VectorXcd amplitudes;

  /// | sum |amp|^2 - 1 |; should stay below 1e-10 through any gate sequence.
  double norm_error() const;
};

/// |0...0> on q qubits. q must lie in [1, 12]; the cap bounds memory at
/// 2^12 amplitudes.
Statevector statevector_zero(int q);

/// Dense unitary acting on an ordered subset of qubits. targets[0] matches
/// the most significant index bit of the gate matrix.
struct UnitaryGate {
  Eigen::MatrixXcd matrix;
  std::vector<int> targets;

  int arity() const { return static_cast<int>(targets.size()); }

  /// max elementwise |U U^dag - I|.
  double unitarity_error() const;
};

/// Applies the gate embedded at its target qubits; norm preserving.
Statevector apply_gate(const Statevector& state, const UnitaryGate& gate);

/// <psi| Z_qubit |psi>, always within [-1, 1] up to rounding.
double expectation_z(const Statevector& state, int qubit);

}  // namespace freqtune
