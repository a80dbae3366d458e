#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace freqtune {

/// Truncated Fourier series target
/// t(x) = c0 + sum_i [ a_i cos(w_i x) + b_i sin(w_i x) ].
struct TargetSpec {
  std::vector<double> frequencies;
  std::vector<double> a;
  std::vector<double> b;
  double c0 = 0.0;
};

/// Coefficients drawn uniformly from [0, 1): c0 first, then (a_i, b_i) per
/// frequency, in order, from the stream derived as (seed, "target").
TargetSpec make_target(const std::vector<double>& frequencies,
                       std::uint64_t seed);

double evaluate_target(const TargetSpec& spec, double x);

/// Adds an independent N(mu, sigma^2) offset to every frequency (stream
/// (seed, "shift")). sigma = 0 is the deterministic test hook: every
/// frequency shifts by exactly mu. Drawn offsets are reported through
/// offsets_out when non-null.
std::vector<double> shift_spectrum(const std::vector<double>& frequencies,
                                   double mu, std::uint64_t seed,
                                   double sigma = 1.0,
                                   std::vector<double>* offsets_out = nullptr);

/// Inputs over [-pi, pi] with min-max scaled outputs in [-1, 1].
struct Dataset {
  std::vector<double> xs;
  std::vector<double> ys;
  double scaler_min = 0.0;  // raw-value range behind the scaling
  double scaler_max = 0.0;

  /// Maps a scaled value back to the raw range.
  double unscale(double y) const;
};

/// n evenly spaced points on [-pi, pi] inclusive; raw targets min-max
/// scaled to [-1, 1]. Throws ScalingError when the raw target is constant.
Dataset sample_dataset(const TargetSpec& spec, int n);

/// Index split of a dataset; train and test are disjoint, sorted, and
/// together cover every index.
struct SplitDataset {
  std::vector<int> train;
  std::vector<int> test;
  double ratio = 0.8;
};

/// Uniform random permutation (stream (seed, "split")); the first
/// round(ratio * n) indices form the train side.
SplitDataset split(const Dataset& dataset, double ratio, std::uint64_t seed);

/// Reads the monthly airline passengers CSV (header "Month,Passengers",
/// months as YYYY-MM). Produces 144 evenly spaced xs over [-pi, pi] in
/// temporal order with min-max scaled counts. A row count other than 144
/// warns on stderr and proceeds.
Dataset load_flight_passengers(const std::string& path);

nlohmann::ordered_json target_to_json(const TargetSpec& spec);
TargetSpec target_from_json(const nlohmann::json& j);
nlohmann::ordered_json dataset_to_json(const Dataset& dataset);
Dataset dataset_from_json(const nlohmann::json& j);

}  // namespace freqtune
