#include "freqtune/pauli.hpp"

#include <map>
#include <mutex>

#include "freqtune/errors.hpp"

namespace freqtune {

namespace {

using cd = std::complex<double>;

bool all_identity(const std::vector<PauliCode>& codes) {
  for (PauliCode c : codes)
    if (c != PauliCode::I) return false;
  return true;
}

}  // namespace

std::complex<double> PauliWord::value(std::uint64_t row) const {
  const int q = qubits();
  cd v(1.0, 0.0);
  for (int j = 0; j < q; ++j) {
    const int bit = static_cast<int>((row >> (q - 1 - j)) & 1ULL);
    switch (codes[j]) {
      case PauliCode::I:
      case PauliCode::X:
        break;
      case PauliCode::Y:
        v *= bit ? cd(0.0, 1.0) : cd(0.0, -1.0);
        break;
      case PauliCode::Z:
        if (bit) v = -v;
        break;
    }
  }
  return v;
}

Eigen::MatrixXcd PauliWord::dense() const {
  const std::uint64_t dim = 1ULL << qubits();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (std::uint64_t r = 0; r < dim; ++r) m(r, r ^ flip_mask) = value(r);
  return m;
}

PauliWord make_pauli_word(const std::vector<PauliCode>& codes) {
  if (codes.empty())
    throw DimensionError("pauli word: need at least one qubit");
  PauliWord w;
  w.codes = codes;
  const int q = w.qubits();
  for (int j = 0; j < q; ++j) {
    if (codes[j] == PauliCode::X || codes[j] == PauliCode::Y)
      w.flip_mask |= 1ULL << (q - 1 - j);
  }
  return w;
}

const std::vector<PauliWord>& pauli_basis(int qubits) {
  static std::mutex mu;
  static std::map<int, std::vector<PauliWord>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(qubits);
  if (it != cache.end()) return it->second;
  if (qubits < 1 || qubits > 12)
    throw ConfigError("pauli_basis: qubit count out of range");

  std::vector<PauliWord> words;
  const std::uint64_t count = 1ULL << (2 * qubits);  // 4^q
  words.reserve(count - 1);
  // Word index m in [1, 4^q) read as base-4 digits, qubit 0 most significant.
  for (std::uint64_t m = 1; m < count; ++m) {
    std::vector<PauliCode> codes(qubits);
    for (int j = 0; j < qubits; ++j) {
      const std::uint64_t digit = (m >> (2 * (qubits - 1 - j))) & 3ULL;
      codes[j] = static_cast<PauliCode>(digit);
    }
    words.push_back(make_pauli_word(codes));
  }
  return cache.emplace(qubits, std::move(words)).first->second;
}

Eigen::MatrixXcd pauli_word_matrix(const std::vector<PauliCode>& codes) {
  if (all_identity(codes))
    throw ConfigError(
        "pauli_word_matrix: all-identity word is excluded from the basis");
  return make_pauli_word(codes).dense();
}

Eigen::Matrix2cd pauli_matrix(PauliAxis axis) {
  Eigen::Matrix2cd m;
  switch (axis) {
    case PauliAxis::X:
      m << cd(0, 0), cd(1, 0), cd(1, 0), cd(0, 0);
      break;
    case PauliAxis::Y:
      m << cd(0, 0), cd(0, -1), cd(0, 1), cd(0, 0);
      break;
    case PauliAxis::Z:
      m << cd(1, 0), cd(0, 0), cd(0, 0), cd(-1, 0);
      break;
  }
  return m;
}

}  // namespace freqtune
