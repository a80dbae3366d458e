#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "freqtune/gates.hpp"
#include "freqtune/pauli.hpp"

#include "json.hpp"

namespace freqtune {

enum class Layout { Serial, Parallel };

enum class InitKind { UnaryFixed, TernaryFixed, UnaryTrainable,
                      TernaryTrainable };

std::string to_string(Layout layout);
std::string to_string(PauliAxis axis);
std::string to_string(InitKind kind);
Layout layout_from_string(const std::string& s);
PauliAxis axis_from_string(const std::string& s);
InitKind init_kind_from_string(const std::string& s);

/// Prefactor initialization strategy. Fixed kinds freeze the prefactors for
/// the whole run (their gradient is still computed, never applied).
struct InitStrategy {
  InitKind kind = InitKind::UnaryTrainable;
  /// Optional override; empty selects the defaults: all-ones for unary
  /// kinds, {1, 3, 9, ..., 3^{k-1}} for ternary kinds.
  std::vector<double> initial_prefactors;

  bool trainable() const {
    return kind == InitKind::UnaryTrainable ||
           kind == InitKind::TernaryTrainable;
  }

  /// Resolved initial prefactors for k encoding gates.
  std::vector<double> prefactors(int k) const;

  static InitStrategy unary_fixed();
  static InitStrategy ternary_fixed();
  static InitStrategy unary_trainable(std::vector<double> initial = {});
  static InitStrategy ternary_trainable(std::vector<double> initial = {});
};

/// Full architecture description; fully determines the circuit shape.
struct CircuitConfig {
  int qubits = 1;
  int encoding_gates = 1;  // k
  Layout layout = Layout::Parallel;
  PauliAxis axis = PauliAxis::X;
  int observable_qubit = 0;  // Z measurement target
  InitStrategy init;
  int ansatz_blocks = 2;  // k + 1 for serial, 2 for parallel

  /// Parameters per ansatz block: 4^q - 1.
  int theta_len() const { return (1 << (2 * qubits)) - 1; }

  void validate() const;  // throws ConfigError

  /// q-qubit parallel circuit: W0, one Rx encoding per qubit, W1, Z on the
  /// last qubit. The topology used by all synthetic and real-data runs.
  static CircuitConfig parallel_default(int q, InitStrategy init);
};

/// Trainable state: prefactors alpha (length k) and one coefficient vector
/// of length 4^q - 1 per ansatz block.
struct Model {
  CircuitConfig config;
  std::vector<double> alpha;
  std::vector<Eigen::VectorXd> theta;
};

/// All ansatz parameters start at 1.0; prefactors come from the init
/// strategy. Deterministic; the seed is reserved for stochastic inits.
Model build_model(const CircuitConfig& config, std::uint64_t seed = 0);

/// Circuit compiled to a gate list with ansatz eigendecompositions cached.
/// Rebuild whenever the model parameters change.
struct CompiledGate {
  enum class Kind { Ansatz, Encoding };
  Kind kind = Kind::Ansatz;
  // Ansatz fields
  int theta_block = -1;
  Eigen::MatrixXcd unitary;
  Eigen::MatrixXcd eigvecs;
  Eigen::VectorXd eigvals;
  // Encoding fields
  int alpha_index = -1;
  int target = -1;
};

struct CompiledCircuit {
  CircuitConfig config;
  std::vector<double> alpha;
  std::vector<CompiledGate> gates;

  int qubits() const { return config.qubits; }
  Eigen::Index dim() const { return Eigen::Index(1) << config.qubits; }
};

CompiledCircuit compile(const Model& model);

/// f(x) = <0|U^dag M U|0> with M = Z on the observable qubit; in [-1, 1].
double forward(const CompiledCircuit& circuit, double x);
double forward(const Model& model, double x);

/// Accessible frequencies of the model output for given prefactors.
struct FrequencySpectrum {
  std::vector<double> values;  // sorted ascending; contains 0
  double dedup_tolerance = 1e-9;
};

/// Omega = { sum_i s_i alpha_i : s_i in {-1, 0, +1} }, deduplicated within
/// tol and sorted.
FrequencySpectrum spectrum_of(const std::vector<double>& alpha,
                              double tol = 1e-9);

/// Least-squares Fourier coefficients of the model output on a sample grid.
struct CoefficientTable {
  std::vector<double> frequencies;
  Eigen::VectorXcd coefficients;
  double residual_norm = 0.0;
  double condition_estimate = 0.0;
};

CoefficientTable extract_coefficients(const Model& model,
                                      const FrequencySpectrum& frequencies,
                                      const std::vector<double>& grid);

/// JSON round trip for models. The document carries a Pauli-ordering tag so
/// persisted theta vectors stay unambiguous.
nlohmann::ordered_json model_to_json(const Model& model);
Model model_from_json(const nlohmann::json& j);

nlohmann::ordered_json config_to_json(const CircuitConfig& config);
CircuitConfig config_from_json(const nlohmann::json& j);

}  // namespace freqtune
