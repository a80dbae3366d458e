#include "freqtune/gates.hpp"

#include <cmath>
#include <string>

#include "freqtune/errors.hpp"

namespace freqtune {

namespace {
using cd = std::complex<double>;
}

double HermitianGenerator::hermiticity_error() const {
  return (matrix - matrix.adjoint()).cwiseAbs().maxCoeff();
}

HermitianEigen eigh(const Eigen::MatrixXcd& hermitian) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(hermitian);
  if (solver.info() != Eigen::Success)
    throw NumericError("eigh: Hermitian eigendecomposition failed");
  return {solver.eigenvectors(), solver.eigenvalues()};
}

Eigen::MatrixXcd exp_i(const HermitianEigen& eig) {
  Eigen::VectorXcd phases(eig.values.size());
  for (Eigen::Index j = 0; j < eig.values.size(); ++j)
    phases(j) = std::polar(1.0, eig.values(j));
  return eig.vectors * phases.asDiagonal() * eig.vectors.adjoint();
}

HermitianGenerator hermitian_from_params(const Eigen::VectorXd& theta, int q) {
  const auto& words = pauli_basis(q);
  if (static_cast<std::size_t>(theta.size()) != words.size())
    throw DimensionError("hermitian_from_params: expected " +
                         std::to_string(words.size()) + " coefficients, got " +
                         std::to_string(theta.size()));
  const std::uint64_t dim = 1ULL << q;
  HermitianGenerator gen;
  gen.qubits = q;
  gen.basis_coeffs = theta;
  gen.matrix = Eigen::MatrixXcd::Zero(dim, dim);
  for (std::size_t m = 0; m < words.size(); ++m) {
    const double c = theta(static_cast<Eigen::Index>(m));
    if (c == 0.0) continue;
    const PauliWord& w = words[m];
    for (std::uint64_t r = 0; r < dim; ++r)
      gen.matrix(r, r ^ w.flip_mask) += c * w.value(r);
  }
  return gen;
}

UnitaryGate unitary_exp(const HermitianGenerator& generator) {
  UnitaryGate gate;
  gate.matrix = exp_i(eigh(generator.matrix));
  gate.targets.resize(generator.qubits);
  for (int t = 0; t < generator.qubits; ++t) gate.targets[t] = t;
  return gate;
}

Eigen::Matrix2cd encoding_matrix(double alpha, double x, PauliAxis axis) {
  const double half = 0.5 * alpha * x;
  const double c = std::cos(half);
  const double s = std::sin(half);
  Eigen::Matrix2cd m;
  switch (axis) {
    case PauliAxis::X:
      m << cd(c, 0), cd(0, -s), cd(0, -s), cd(c, 0);
      break;
    case PauliAxis::Y:
      m << cd(c, 0), cd(-s, 0), cd(s, 0), cd(c, 0);
      break;
    case PauliAxis::Z:
      m << cd(c, -s), cd(0, 0), cd(0, 0), cd(c, s);
      break;
  }
  return m;
}

UnitaryGate encoding_gate(double alpha, double x, PauliAxis axis, int target) {
  UnitaryGate gate;
  gate.matrix = encoding_matrix(alpha, x, axis);
  gate.targets = {target};
  return gate;
}

}  // namespace freqtune
