#pragma once

#include <Eigen/Dense>

#include "freqtune/pauli.hpp"
#include "freqtune/statevector.hpp"

namespace freqtune {

/// Generator of a special-unitary ansatz block: H = sum_m coeffs[m] * P_m
/// over the 4^q - 1 non-identity Pauli words (pauli_basis ordering).
struct HermitianGenerator {
  int qubits = 0;
  Eigen::VectorXd basis_coeffs;
  Eigen::MatrixXcd matrix;

  /// max elementwise |H - H^dag|.
  double hermiticity_error() const;
};

/// Eigendecomposition H = V diag(values) V^dag of a Hermitian matrix.
/// Reused by both the exponential and its directional derivatives.
struct HermitianEigen {
  Eigen::MatrixXcd vectors;
  Eigen::VectorXd values;
};

HermitianEigen eigh(const Eigen::MatrixXcd& hermitian);

/// V diag(e^{i values}) V^dag.
Eigen::MatrixXcd exp_i(const HermitianEigen& eig);

/// Builds H from a coefficient vector of length 4^q - 1.
HermitianGenerator hermitian_from_params(const Eigen::VectorXd& theta, int q);

/// U = exp(iH) via Hermitian eigendecomposition; unitary to eigensolver
/// accuracy. Acts on all q qubits of the generator.
UnitaryGate unitary_exp(const HermitianGenerator& generator);

/// Single-qubit feature map R(x, alpha) = cos(alpha x / 2) I
/// - i sin(alpha x / 2) sigma_axis.
UnitaryGate encoding_gate(double alpha, double x, PauliAxis axis,
                          int target = 0);

/// The 2x2 matrix of encoding_gate without the gate wrapper.
Eigen::Matrix2cd encoding_matrix(double alpha, double x, PauliAxis axis);

}  // namespace freqtune
