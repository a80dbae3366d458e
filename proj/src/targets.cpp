#include "freqtune/targets.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include "freqtune/errors.hpp"
#include "freqtune/rng.hpp"

namespace freqtune {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> linspace_pi(int n) {
  std::vector<double> xs(n);
  const double step = 2.0 * kPi / (n - 1);
  for (int i = 0; i < n; ++i) xs[i] = -kPi + i * step;
  xs.back() = kPi;  // exact endpoint
  return xs;
}

/// Min-max scales raw values to [-1, 1]; fit on the full series.
void scale_into(Dataset& d, const std::vector<double>& raw) {
  const auto [lo, hi] = std::minmax_element(raw.begin(), raw.end());
  if (!(*hi - *lo > 1e-12))
    throw ScalingError(
        "dataset scaling: raw targets are constant (min == max == " +
        std::to_string(*lo) + "), min-max scaling is undefined");
  d.scaler_min = *lo;
  d.scaler_max = *hi;
  d.ys.resize(raw.size());
  const double span = *hi - *lo;
  for (std::size_t i = 0; i < raw.size(); ++i)
    d.ys[i] = 2.0 * (raw[i] - *lo) / span - 1.0;
}

}  // namespace

TargetSpec make_target(const std::vector<double>& frequencies,
                       std::uint64_t seed) {
  if (frequencies.empty())
    throw ConfigError("make_target: frequency set must be nonempty");
  RngStream rng = RngStream::derive(seed, "target");
  TargetSpec spec;
  spec.frequencies = frequencies;
  spec.c0 = rng.next_double();
  spec.a.reserve(frequencies.size());
  spec.b.reserve(frequencies.size());
  for (std::size_t i = 0; i < frequencies.size(); ++i) {
    spec.a.push_back(rng.next_double());
    spec.b.push_back(rng.next_double());
  }
  return spec;
}

double evaluate_target(const TargetSpec& spec, double x) {
  double value = spec.c0;
  for (std::size_t i = 0; i < spec.frequencies.size(); ++i) {
    const double wx = spec.frequencies[i] * x;
    value += spec.a[i] * std::cos(wx) + spec.b[i] * std::sin(wx);
  }
  return value;
}

std::vector<double> shift_spectrum(const std::vector<double>& frequencies,
                                   double mu, std::uint64_t seed, double sigma,
                                   std::vector<double>* offsets_out) {
  RngStream rng = RngStream::derive(seed, "shift");
  std::vector<double> shifted(frequencies.size());
  if (offsets_out) offsets_out->clear();
  for (std::size_t i = 0; i < frequencies.size(); ++i) {
    const double offset =
        sigma == 0.0 ? mu : mu + sigma * rng.next_gaussian();
    shifted[i] = frequencies[i] + offset;
    if (offsets_out) offsets_out->push_back(offset);
  }
  return shifted;
}

double Dataset::unscale(double y) const {
  return scaler_min + 0.5 * (y + 1.0) * (scaler_max - scaler_min);
}

Dataset sample_dataset(const TargetSpec& spec, int n) {
  if (n < 2) throw ConfigError("sample_dataset: need at least two samples");
  Dataset d;
  d.xs = linspace_pi(n);
  std::vector<double> raw(n);
  for (int i = 0; i < n; ++i) raw[i] = evaluate_target(spec, d.xs[i]);
  scale_into(d, raw);
  return d;
}

SplitDataset split(const Dataset& dataset, double ratio, std::uint64_t seed) {
  if (!(ratio > 0.0 && ratio < 1.0))
    throw ConfigError("split: ratio must lie strictly between 0 and 1");
  const int n = static_cast<int>(dataset.xs.size());
  const int n_train = static_cast<int>(std::lround(ratio * n));
  if (n_train == 0 || n_train == n)
    throw ConfigError("split: both sides must be nonempty");

  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  RngStream rng = RngStream::derive(seed, "split");
  for (int i = n - 1; i > 0; --i) {
    const int j = static_cast<int>(rng.next_below(i + 1));
    std::swap(perm[i], perm[j]);
  }

  SplitDataset s;
  s.ratio = ratio;
  s.train.assign(perm.begin(), perm.begin() + n_train);
  s.test.assign(perm.begin() + n_train, perm.end());
  std::sort(s.train.begin(), s.train.end());
  std::sort(s.test.begin(), s.test.end());
  return s;
}

Dataset load_flight_passengers(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw IoError("flight passengers: cannot open " + path);

  std::string line;
  if (!std::getline(in, line))
    throw ParseError("flight passengers: empty file " + path);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "Month,Passengers")
    throw ParseError(
        "flight passengers: expected header \"Month,Passengers\", got \"" +
        line + "\"");

  std::vector<double> raw;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos ||
        line.find(',', comma + 1) != std::string::npos)
      throw ParseError("flight passengers: line " + std::to_string(lineno) +
                       ": expected exactly two columns");
    const std::string month = line.substr(0, comma);
    const std::string count = line.substr(comma + 1);
    if (month.size() != 7 || month[4] != '-' ||
        !std::isdigit(static_cast<unsigned char>(month[0])))
      throw ParseError("flight passengers: line " + std::to_string(lineno) +
                       ": month must look like YYYY-MM, got \"" + month +
                       "\"");
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(count, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != count.size() || count.empty())
      throw ParseError("flight passengers: line " + std::to_string(lineno) +
                       ": passenger count \"" + count + "\" is not a number");
    raw.push_back(value);
  }
  if (raw.empty())
    throw ParseError("flight passengers: no data rows in " + path);
  if (raw.size() != 144)
    std::cerr << "warning: flight passengers file has " << raw.size()
              << " rows, expected 144; proceeding\n";

  Dataset d;
  d.xs = linspace_pi(static_cast<int>(raw.size()));
  scale_into(d, raw);
  return d;
}

nlohmann::ordered_json target_to_json(const TargetSpec& spec) {
  nlohmann::ordered_json j;
  j["frequencies"] = spec.frequencies;
  j["a"] = spec.a;
  j["b"] = spec.b;
  j["c0"] = spec.c0;
  return j;
}

TargetSpec target_from_json(const nlohmann::json& j) {
  TargetSpec spec;
  spec.frequencies = j.at("frequencies").get<std::vector<double>>();
  spec.a = j.at("a").get<std::vector<double>>();
  spec.b = j.at("b").get<std::vector<double>>();
  spec.c0 = j.at("c0").get<double>();
  if (spec.a.size() != spec.frequencies.size() ||
      spec.b.size() != spec.frequencies.size())
    throw ParseError("target spec: coefficient lengths must match frequencies");
  return spec;
}

nlohmann::ordered_json dataset_to_json(const Dataset& dataset) {
  nlohmann::ordered_json j;
  j["xs"] = dataset.xs;
  j["ys"] = dataset.ys;
  j["scaler_min"] = dataset.scaler_min;
  j["scaler_max"] = dataset.scaler_max;
  return j;
}

Dataset dataset_from_json(const nlohmann::json& j) {
  Dataset d;
  d.xs = j.at("xs").get<std::vector<double>>();
  d.ys = j.at("ys").get<std::vector<double>>();
  d.scaler_min = j.at("scaler_min").get<double>();
  d.scaler_max = j.at("scaler_max").get<double>();
  if (d.xs.size() != d.ys.size())
    throw ParseError("dataset: xs and ys lengths differ");
  return d;
}

}  // namespace freqtune
