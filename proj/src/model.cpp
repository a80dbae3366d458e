#include "freqtune/model.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "freqtune/errors.hpp"

namespace freqtune {

namespace {

using cd = std::complex<double>;

constexpr const char* kPauliOrderTag = "lex-IXYZ-q0msb-v1";

}  // namespace

std::string to_string(Layout layout) {
  return layout == Layout::Serial ? "serial" : "parallel";
}

std::string to_string(PauliAxis axis) {
  switch (axis) {
    case PauliAxis::X: return "X";
    case PauliAxis::Y: return "Y";
    case PauliAxis::Z: return "Z";
  }
  return "?";
}

std::string to_string(InitKind kind) {
  switch (kind) {
    case InitKind::UnaryFixed: return "unary_fixed";
    case InitKind::TernaryFixed: return "ternary_fixed";
    case InitKind::UnaryTrainable: return "unary_trainable";
    case InitKind::TernaryTrainable: return "ternary_trainable";
  }
  return "?";
}

Layout layout_from_string(const std::string& s) {
  if (s == "serial") return Layout::Serial;
  if (s == "parallel") return Layout::Parallel;
  throw ConfigError("unknown layout: " + s);
}

PauliAxis axis_from_string(const std::string& s) {
  if (s == "X") return PauliAxis::X;
  if (s == "Y") return PauliAxis::Y;
  if (s == "Z") return PauliAxis::Z;
  throw ConfigError("unknown Pauli axis: " + s);
}

InitKind init_kind_from_string(const std::string& s) {
  if (s == "unary_fixed") return InitKind::UnaryFixed;
  if (s == "ternary_fixed") return InitKind::TernaryFixed;
  if (s == "unary_trainable") return InitKind::UnaryTrainable;
  if (s == "ternary_trainable") return InitKind::TernaryTrainable;
  throw ConfigError("unknown init strategy: " + s);
}

std::vector<double> InitStrategy::prefactors(int k) const {
  if (!initial_prefactors.empty()) {
    if (static_cast<int>(initial_prefactors.size()) != k)
      throw ConfigError("init strategy: expected " + std::to_string(k) +
                        " initial prefactors, got " +
                        std::to_string(initial_prefactors.size()));
    return initial_prefactors;
  }
  std::vector<double> alpha(k, 1.0);
  if (kind == InitKind::TernaryFixed || kind == InitKind::TernaryTrainable) {
    double v = 1.0;
    for (int i = 0; i < k; ++i, v *= 3.0) alpha[i] = v;
  }
  return alpha;
}

InitStrategy InitStrategy::unary_fixed() { return {InitKind::UnaryFixed, {}}; }
InitStrategy InitStrategy::ternary_fixed() {
  return {InitKind::TernaryFixed, {}};
}
InitStrategy InitStrategy::unary_trainable(std::vector<double> initial) {
  return {InitKind::UnaryTrainable, std::move(initial)};
}
InitStrategy InitStrategy::ternary_trainable(std::vector<double> initial) {
  return {InitKind::TernaryTrainable, std::move(initial)};
}

void CircuitConfig::validate() const {
  if (qubits < 1 || qubits > 12)
    throw ConfigError("config: qubit count must be in [1, 12]");
  if (encoding_gates < 1)
    throw ConfigError("config: need at least one encoding gate");
  if (layout == Layout::Parallel && encoding_gates != qubits)
    throw ConfigError(
        "config: parallel layout requires one encoding gate per qubit (k = "
        "q)");
  const int expected_blocks =
      layout == Layout::Parallel ? 2 : encoding_gates + 1;
  if (ansatz_blocks != expected_blocks)
    throw ConfigError("config: layout requires " +
                      std::to_string(expected_blocks) + " ansatz blocks, got " +
                      std::to_string(ansatz_blocks));
  if (observable_qubit < 0 || observable_qubit >= qubits)
    throw ConfigError("config: observable qubit out of range");
  if (!init.initial_prefactors.empty() &&
      static_cast<int>(init.initial_prefactors.size()) != encoding_gates)
    throw ConfigError("config: initial prefactor count must equal k");
}

CircuitConfig CircuitConfig::parallel_default(int q, InitStrategy init) {
  CircuitConfig c;
  c.qubits = q;
  c.encoding_gates = q;
  c.layout = Layout::Parallel;
  c.axis = PauliAxis::X;
  c.observable_qubit = q - 1;
  c.init = std::move(init);
  c.ansatz_blocks = 2;
  return c;
}

Model build_model(const CircuitConfig& config, std::uint64_t /*seed*/) {
  config.validate();
  Model m;
  m.config = config;
  m.alpha = config.init.prefactors(config.encoding_gates);
  m.theta.assign(config.ansatz_blocks,
                 Eigen::VectorXd::Ones(config.theta_len()));
  return m;
}

CompiledCircuit compile(const Model& model) {
  const CircuitConfig& cfg = model.config;
  cfg.validate();
  if (static_cast<int>(model.alpha.size()) != cfg.encoding_gates)
    throw DimensionError("model: alpha length does not match k");
  if (static_cast<int>(model.theta.size()) != cfg.ansatz_blocks)
    throw DimensionError("model: theta block count does not match layout");
  for (const auto& block : model.theta)
    if (block.size() != cfg.theta_len())
      throw DimensionError("model: theta block length must be 4^q - 1");

  CompiledCircuit cc;
  cc.config = cfg;
  cc.alpha = model.alpha;

  auto add_ansatz = [&](int block) {
    CompiledGate g;
    g.kind = CompiledGate::Kind::Ansatz;
    g.theta_block = block;
    const HermitianGenerator gen =
        hermitian_from_params(model.theta[block], cfg.qubits);
    const HermitianEigen eig = eigh(gen.matrix);
    g.eigvecs = eig.vectors;
    g.eigvals = eig.values;
    g.unitary = exp_i(eig);
    cc.gates.push_back(std::move(g));
  };
  auto add_encoding = [&](int index) {
    CompiledGate g;
    g.kind = CompiledGate::Kind::Encoding;
    g.alpha_index = index;
    g.target = cfg.layout == Layout::Parallel ? index : index % cfg.qubits;
    cc.gates.push_back(std::move(g));
  };

  if (cfg.layout == Layout::Parallel) {
    add_ansatz(0);
    for (int i = 0; i < cfg.encoding_gates; ++i) add_encoding(i);
    add_ansatz(1);
  } else {
    add_ansatz(0);
    for (int i = 0; i < cfg.encoding_gates; ++i) {
      add_encoding(i);
      add_ansatz(i + 1);
    }
  }
  return cc;
}

namespace {

/// Applies a single-qubit 2x2 matrix to one column-vector state in place.
void apply_single_qubit(Eigen::Ref<Eigen::VectorXcd> amps, int qubits,
                        int target, const Eigen::Matrix2cd& u) {
  const std::uint64_t dim = 1ULL << qubits;
  const std::uint64_t bit = 1ULL << (qubits - 1 - target);
  for (std::uint64_t i = 0; i < dim; ++i) {
    if (i & bit) continue;
    const cd a = amps(i);
    const cd b = amps(i | bit);
    amps(i) = u(0, 0) * a + u(0, 1) * b;
    amps(i | bit) = u(1, 0) * a + u(1, 1) * b;
  }
}

}  // namespace

double forward(const CompiledCircuit& circuit, double x) {
  Eigen::VectorXcd state = Eigen::VectorXcd::Zero(circuit.dim());
  state(0) = 1.0;
  for (const CompiledGate& g : circuit.gates) {
    if (g.kind == CompiledGate::Kind::Ansatz) {
      state = g.unitary * state;
    } else {
      apply_single_qubit(state, circuit.qubits(), g.target,
                         encoding_matrix(circuit.alpha[g.alpha_index], x,
                                         circuit.config.axis));
    }
  }
  const std::uint64_t bit =
      1ULL << (circuit.qubits() - 1 - circuit.config.observable_qubit);
  double value = 0.0;
  for (Eigen::Index i = 0; i < state.size(); ++i) {
    const double p = std::norm(state(i));
    value += (static_cast<std::uint64_t>(i) & bit) ? -p : p;
  }
  return value;
}

double forward(const Model& model, double x) {
  return forward(compile(model), x);
}

FrequencySpectrum spectrum_of(const std::vector<double>& alpha, double tol) {
  std::vector<double> sums{0.0};
  for (double a : alpha) {
    std::vector<double> next;
    next.reserve(sums.size() * 3);
    for (double v : sums) {
      next.push_back(v - a);
      next.push_back(v);
      next.push_back(v + a);
    }
    sums = std::move(next);
  }
  std::sort(sums.begin(), sums.end());
  FrequencySpectrum spec;
  spec.dedup_tolerance = tol;
  for (double v : sums) {
    if (spec.values.empty() || v - spec.values.back() > tol)
      spec.values.push_back(v);
  }
  return spec;
}

CoefficientTable extract_coefficients(const Model& model,
                                      const FrequencySpectrum& frequencies,
                                      const std::vector<double>& grid) {
  const Eigen::Index n = static_cast<Eigen::Index>(grid.size());
  const Eigen::Index f = static_cast<Eigen::Index>(frequencies.values.size());
  if (n < f)
    throw ConfigError(
        "extract_coefficients: grid must be at least as large as the "
        "frequency set");

  const CompiledCircuit cc = compile(model);
  Eigen::MatrixXcd design(n, f);
  Eigen::VectorXcd rhs(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index w = 0; w < f; ++w)
      design(j, w) = std::polar(1.0, frequencies.values[w] * grid[j]);
    rhs(j) = forward(cc, grid[j]);
  }

  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(
      design, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sigma = svd.singularValues();
  const double cond =
      sigma(sigma.size() - 1) > 0.0 ? sigma(0) / sigma(sigma.size() - 1)
                                    : std::numeric_limits<double>::infinity();
  if (!(cond < 1e12))
    throw ConditioningError(
        "extract_coefficients: design matrix is rank deficient (aliased "
        "frequencies on this grid); condition estimate " +
        std::to_string(cond));

  CoefficientTable table;
  table.frequencies = frequencies.values;
  table.coefficients = svd.solve(rhs);
  table.residual_norm = (design * table.coefficients - rhs).norm();
  table.condition_estimate = cond;
  return table;
}

nlohmann::ordered_json config_to_json(const CircuitConfig& config) {
  nlohmann::ordered_json j;
  j["qubits"] = config.qubits;
  j["encoding_gates"] = config.encoding_gates;
  j["layout"] = to_string(config.layout);
  j["axis"] = to_string(config.axis);
  j["observable_qubit"] = config.observable_qubit;
  j["ansatz_blocks"] = config.ansatz_blocks;
  j["init"] = {{"kind", to_string(config.init.kind)},
               {"initial_prefactors", config.init.initial_prefactors}};
  return j;
}

CircuitConfig config_from_json(const nlohmann::json& j) {
  CircuitConfig c;
  c.qubits = j.at("qubits").get<int>();
  c.encoding_gates = j.at("encoding_gates").get<int>();
  c.layout = layout_from_string(j.at("layout").get<std::string>());
  c.axis = axis_from_string(j.at("axis").get<std::string>());
  c.observable_qubit = j.at("observable_qubit").get<int>();
  c.ansatz_blocks = j.at("ansatz_blocks").get<int>();
  c.init.kind = init_kind_from_string(j.at("init").at("kind"));
  c.init.initial_prefactors =
      j.at("init").at("initial_prefactors").get<std::vector<double>>();
  c.validate();
  return c;
}

nlohmann::ordered_json model_to_json(const Model& model) {
  nlohmann::ordered_json j;
  j["pauli_ordering"] = kPauliOrderTag;
  j["config"] = config_to_json(model.config);
  j["alpha"] = model.alpha;
  nlohmann::ordered_json blocks = nlohmann::ordered_json::array();
  for (const auto& block : model.theta) {
    std::vector<double> v(block.data(), block.data() + block.size());
    blocks.push_back(v);
  }
  j["theta"] = std::move(blocks);
  return j;
}

Model model_from_json(const nlohmann::json& j) {
  const std::string tag = j.at("pauli_ordering").get<std::string>();
  if (tag != kPauliOrderTag)
    throw ParseError("model: unsupported pauli_ordering tag " + tag);
  Model m;
  m.config = config_from_json(j.at("config"));
  m.alpha = j.at("alpha").get<std::vector<double>>();
  for (const auto& block : j.at("theta")) {
    const auto v = block.get<std::vector<double>>();
    m.theta.push_back(
        Eigen::Map<const Eigen::VectorXd>(v.data(), v.size()));
  }
  if (static_cast<int>(m.alpha.size()) != m.config.encoding_gates ||
      static_cast<int>(m.theta.size()) != m.config.ansatz_blocks)
    throw ParseError("model: parameter shapes do not match config");
  for (const auto& block : m.theta)
    if (block.size() != m.config.theta_len())
      throw ParseError("model: theta block length must be 4^q - 1");
  return m;
}

}  // namespace freqtune
