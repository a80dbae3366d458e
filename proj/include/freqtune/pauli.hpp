#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <vector>

namespace freqtune {

/// Encoding axes (the I code exists only for Pauli words).
enum class PauliAxis { X, Y, Z };

/// Per-qubit letter of a Pauli word.
enum class PauliCode : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

/// One n-qubit Pauli word P = sigma_{c0} (x) sigma_{c1} (x) ... with
/// codes[0] acting on qubit 0, the leftmost tensor factor (most significant
/// bit of the basis index).
///
/// Every word has exactly one nonzero entry per row: column = row ^ flip_mask
/// with a value in {+1, -1, +i, -i}. That sparse action is what the gradient
/// code iterates over; dense() materializes the full matrix for tests and
/// generator assembly.
struct PauliWord {
  std::vector<PauliCode> codes;
  std::uint64_t flip_mask = 0;  // bits set where the code is X or Y

  int qubits() const { return static_cast<int>(codes.size()); }

  /// Value of the single nonzero entry in row `row` (column row ^ flip_mask).
  std::complex<double> value(std::uint64_t row) const;

  Eigen::MatrixXcd dense() const;
};

PauliWord make_pauli_word(const std::vector<PauliCode>& codes);

/// All 4^q - 1 non-identity Pauli words in lexicographic order over
/// (I, X, Y, Z) codes per qubit; qubit 0 is the most significant digit.
/// This ordering is frozen: serialized parameter vectors depend on it.
const std::vector<PauliWord>& pauli_basis(int qubits);

/// Dense matrix of a Pauli word given per-qubit labels. Rejects the all-I
/// word (the identity is excluded from the generator basis).
Eigen::MatrixXcd pauli_word_matrix(const std::vector<PauliCode>& codes);

/// 2x2 matrix of a single Pauli operator.
Eigen::Matrix2cd pauli_matrix(PauliAxis axis);

}  // namespace freqtune
