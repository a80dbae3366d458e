#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "freqtune/errors.hpp"
#include "freqtune/model.hpp"
#include "freqtune/rng.hpp"

using namespace freqtune;
constexpr double kPi = std::numbers::pi;

namespace {

std::vector<double> grid_points(int n) {
  std::vector<double> xs(n);
  for (int i = 0; i < n; ++i) xs[i] = -kPi + i * (2.0 * kPi / (n - 1));
  return xs;
}

// Exhaustive sign-vector enumeration, independent of spectrum_of's
// incremental construction.
std::vector<double> brute_force_sums(const std::vector<double>& alpha) {
  const int k = static_cast<int>(alpha.size());
  const int total = static_cast<int>(std::pow(3, k));
  std::vector<double> sums;
  sums.reserve(total);
  for (int code = 0; code < total; ++code) {
    int c = code;
    double sum = 0.0;
    for (int i = 0; i < k; ++i) {
      const int s = c % 3 - 1;  // -1, 0, +1
      c /= 3;
      sum += s * alpha[i];
    }
    sums.push_back(sum);
  }
  return sums;
}

Model random_model(RngStream& rng, int q) {
  CircuitConfig cfg = CircuitConfig::parallel_default(
      q, InitStrategy::unary_trainable());
  Model m = build_model(cfg);
  for (auto& a : m.alpha) a = rng.next_uniform(0.5, 2.5);
  for (auto& block : m.theta)
    for (Eigen::Index i = 0; i < block.size(); ++i)
      block(i) = rng.next_uniform(-1.0, 1.0);
  return m;
}

}  // namespace

TEST_CASE("build_model paper configurations") {
  const Model ternary = build_model(CircuitConfig::parallel_default(
      3, InitStrategy::ternary_trainable()));
  CHECK(ternary.alpha == std::vector<double>{1, 3, 9});
  REQUIRE(ternary.theta.size() == 2);
  CHECK(ternary.theta[0].size() == 63);
  CHECK(ternary.theta[0].minCoeff() == 1.0);
  CHECK(ternary.theta[0].maxCoeff() == 1.0);

  const Model perturbed = build_model(CircuitConfig::parallel_default(
      3, InitStrategy::unary_trainable({1.01, 1.02, 1.03})));
  CHECK(perturbed.alpha == std::vector<double>{1.01, 1.02, 1.03});

  const Model q4 = build_model(CircuitConfig::parallel_default(
      4, InitStrategy::ternary_trainable()));
  CHECK(q4.theta[0].size() == 255);
  CHECK(q4.alpha == std::vector<double>{1, 3, 9, 27});
}

TEST_CASE("config validation") {
  CircuitConfig bad = CircuitConfig::parallel_default(
      3, InitStrategy::unary_trainable());
  bad.encoding_gates = 2;  // parallel needs k = q
  CHECK_THROWS_AS(bad.validate(), ConfigError);

  CircuitConfig blocks = CircuitConfig::parallel_default(
      2, InitStrategy::unary_fixed());
  blocks.ansatz_blocks = 3;
  CHECK_THROWS_AS(blocks.validate(), ConfigError);

  CircuitConfig serial;
  serial.qubits = 2;
  serial.encoding_gates = 3;
  serial.layout = Layout::Serial;
  serial.ansatz_blocks = 4;
  serial.observable_qubit = 1;
  serial.init = InitStrategy::unary_trainable();
  CHECK_NOTHROW(serial.validate());

  CircuitConfig wrong_init = CircuitConfig::parallel_default(
      3, InitStrategy::unary_trainable({1.0, 2.0}));
  CHECK_THROWS_AS(build_model(wrong_init), ConfigError);
}

TEST_CASE("forward reduces to cos(x) for the identity ansatz") {
  Model m = build_model(CircuitConfig::parallel_default(
      1, InitStrategy::unary_trainable()));
  for (auto& block : m.theta) block.setZero();
  const CompiledCircuit cc = compile(m);
  for (double x : grid_points(17))
    CHECK(forward(cc, x) == doctest::Approx(std::cos(x)).epsilon(1e-12));
}

TEST_CASE("forward is constant when all prefactors vanish") {
  RngStream rng(31);
  Model m = random_model(rng, 2);
  m.alpha = {0.0, 0.0};
  const CompiledCircuit cc = compile(m);
  const double f0 = forward(cc, 0.0);
  for (double x : grid_points(13))
    CHECK(forward(cc, x) == doctest::Approx(f0).epsilon(1e-12));
}

TEST_CASE("forward output is bounded") {
  RngStream rng(32);
  for (int rep = 0; rep < 3; ++rep) {
    const Model m = random_model(rng, 3);
    const CompiledCircuit cc = compile(m);
    for (double x : grid_points(41)) {
      const double f = forward(cc, x);
      CHECK(std::abs(f) <= 1.0 + 1e-12);
    }
  }
}

TEST_CASE("spectrum_of closed forms") {
  const FrequencySpectrum equal = spectrum_of({1, 1, 1});
  CHECK(equal.values == std::vector<double>{-3, -2, -1, 0, 1, 2, 3});

  const FrequencySpectrum ternary = spectrum_of({1, 3, 9});
  REQUIRE(ternary.values.size() == 27);
  for (int i = 0; i < 27; ++i)
    CHECK(ternary.values[i] == doctest::Approx(i - 13.0));
}

TEST_CASE("spectrum_of matches exhaustive enumeration") {
  RngStream rng(33);
  for (int rep = 0; rep < 20; ++rep) {
    const int k = 1 + static_cast<int>(rng.next_below(4));
    std::vector<double> alpha(k);
    for (auto& a : alpha) a = rng.next_uniform(0.2, 4.0);
    const FrequencySpectrum spec = spectrum_of(alpha);
    const std::vector<double> sums = brute_force_sums(alpha);

    // Every enumerated sum is represented within tolerance...
    for (double s : sums) {
      const auto it = std::lower_bound(spec.values.begin(), spec.values.end(),
                                       s - 1e-8);
      REQUIRE(it != spec.values.end());
      CHECK(std::abs(*it - s) < 1e-8);
    }
    // ...and every spectrum member is one of the sums.
    for (double v : spec.values) {
      const bool found = std::any_of(sums.begin(), sums.end(), [&](double s) {
        return std::abs(s - v) < 1e-8;
      });
      CHECK(found);
    }
    // Structure: sorted strictly increasing, symmetric, contains 0.
    for (std::size_t i = 1; i < spec.values.size(); ++i)
      CHECK(spec.values[i] > spec.values[i - 1]);
    for (double v : spec.values) {
      const bool mirrored =
          std::any_of(spec.values.begin(), spec.values.end(),
                      [&](double u) { return std::abs(u + v) < 1e-8; });
      CHECK(mirrored);
    }
    CHECK(std::any_of(spec.values.begin(), spec.values.end(),
                      [](double v) { return std::abs(v) < 1e-12; }));
  }
}

TEST_CASE("spectrum_of example with mixed prefactors") {
  const FrequencySpectrum spec = spectrum_of({1, 1.2, 3});
  const std::vector<double> sums = brute_force_sums({1, 1.2, 3});
  std::set<long long> distinct;
  for (double s : sums) distinct.insert(std::llround(s * 1e9));
  CHECK(spec.values.size() == distinct.size());
}

TEST_CASE("parallel and serial layouts agree with identity middle blocks") {
  RngStream rng(34);
  const int q = 3;
  Model parallel = build_model(CircuitConfig::parallel_default(
      q, InitStrategy::unary_trainable({0.8, 1.4, 2.2})));
  for (auto& block : parallel.theta)
    for (Eigen::Index i = 0; i < block.size(); ++i)
      block(i) = rng.next_uniform(-1.0, 1.0);

  CircuitConfig serial_cfg;
  serial_cfg.qubits = q;
  serial_cfg.encoding_gates = q;
  serial_cfg.layout = Layout::Serial;
  serial_cfg.axis = PauliAxis::X;
  serial_cfg.observable_qubit = q - 1;
  serial_cfg.ansatz_blocks = q + 1;
  serial_cfg.init = InitStrategy::unary_trainable({0.8, 1.4, 2.2});
  Model serial = build_model(serial_cfg);
  serial.theta[0] = parallel.theta[0];
  serial.theta[1].setZero();
  serial.theta[2].setZero();
  serial.theta[3] = parallel.theta[1];

  const CompiledCircuit cp = compile(parallel);
  const CompiledCircuit cs = compile(serial);
  for (double x : grid_points(21))
    CHECK(std::abs(forward(cp, x) - forward(cs, x)) < 1e-10);
}

TEST_CASE("extract_coefficients on a constant model") {
  RngStream rng(35);
  Model m = random_model(rng, 2);
  m.alpha = {0.0, 0.0};
  const FrequencySpectrum spec = spectrum_of(m.alpha);
  REQUIRE(spec.values.size() == 1);
  const CoefficientTable table =
      extract_coefficients(m, spec, grid_points(50));
  CHECK(table.coefficients(0).real() ==
        doctest::Approx(forward(m, 0.0)).epsilon(1e-10));
  CHECK(std::abs(table.coefficients(0).imag()) < 1e-10);
  CHECK(table.residual_norm < 1e-10);
}

TEST_CASE("extract_coefficients recovers the cosine decomposition") {
  Model m = build_model(CircuitConfig::parallel_default(
      1, InitStrategy::unary_trainable()));
  for (auto& block : m.theta) block.setZero();  // f(x) = cos(x)
  const FrequencySpectrum spec = spectrum_of(m.alpha);
  const CoefficientTable table =
      extract_coefficients(m, spec, grid_points(60));
  REQUIRE(spec.values.size() == 3);
  CHECK(std::abs(table.coefficients(0) - 0.5) < 1e-10);  // omega = -1
  CHECK(std::abs(table.coefficients(1) - 0.0) < 1e-10);  // omega = 0
  CHECK(std::abs(table.coefficients(2) - 0.5) < 1e-10);  // omega = +1
  CHECK(table.residual_norm < 1e-10);
}

TEST_CASE("random model spectra carry the full Fourier support") {
  RngStream rng(36);
  for (int rep = 0; rep < 3; ++rep) {
    Model m = random_model(rng, 3);
    // Random prefactors near the ternary grid; redraw when sum combinations
    // cluster, since nearly coincident basis frequencies leave the least
    // squares fit unconditioned on a 2pi window.
    auto min_gap = [](const FrequencySpectrum& s) {
      double gap = 1e100;
      for (std::size_t i = 1; i < s.values.size(); ++i)
        gap = std::min(gap, s.values[i] - s.values[i - 1]);
      return gap;
    };
    do {
      m.alpha = {rng.next_uniform(0.7, 1.3), rng.next_uniform(2.6, 3.4),
                 rng.next_uniform(8.2, 9.8)};
    } while (min_gap(spectrum_of(m.alpha, 1e-6)) < 0.25);
    const FrequencySpectrum spec = spectrum_of(m.alpha, 1e-6);
    const CoefficientTable table =
        extract_coefficients(m, spec, grid_points(100));
    CHECK(table.residual_norm < 1e-8);

    // Reality: c_{-w} = conj(c_w).
    for (std::size_t i = 0; i < spec.values.size(); ++i) {
      const double w = spec.values[i];
      const auto it = std::min_element(
          spec.values.begin(), spec.values.end(), [&](double a, double b) {
            return std::abs(a + w) < std::abs(b + w);
          });
      const std::size_t j = it - spec.values.begin();
      CHECK(std::abs(table.coefficients(i) -
                     std::conj(table.coefficients(j))) < 1e-9);
    }
  }
}

TEST_CASE("extract_coefficients flags aliased frequencies") {
  Model m = build_model(CircuitConfig::parallel_default(
      1, InitStrategy::unary_trainable()));
  // On the 100-point inclusive grid the spacing is 2pi/99, so frequency 99
  // aliases onto frequency 0.
  FrequencySpectrum aliased;
  aliased.values = {0.0, 99.0};
  CHECK_THROWS_AS(extract_coefficients(m, aliased, grid_points(100)),
                  ConditioningError);

  FrequencySpectrum too_many;
  too_many.values = {0.0, 1.0, 2.0};
  CHECK_THROWS_AS(extract_coefficients(m, too_many, grid_points(2)),
                  ConfigError);
}

TEST_CASE("model JSON round trip") {
  RngStream rng(37);
  const Model m = random_model(rng, 2);
  const auto j = model_to_json(m);
  const Model back = model_from_json(nlohmann::json::parse(j.dump()));
  CHECK(back.alpha == m.alpha);
  REQUIRE(back.theta.size() == m.theta.size());
  for (std::size_t b = 0; b < m.theta.size(); ++b)
    CHECK((back.theta[b] - m.theta[b]).cwiseAbs().maxCoeff() == 0.0);
  CHECK(back.config.qubits == m.config.qubits);
  CHECK(back.config.layout == m.config.layout);
  CHECK(back.config.init.kind == m.config.init.kind);

  nlohmann::json tampered = nlohmann::json::parse(j.dump());
  tampered["pauli_ordering"] = "other";
  CHECK_THROWS_AS(model_from_json(tampered), ParseError);
}
