#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "freqtune/optim.hpp"
#include "freqtune/targets.hpp"

#include "json.hpp"

namespace freqtune {

/// Everything recorded about one training run. Trajectories are stored as
/// column arrays (iterations / losses / prefactor snapshots share indices).
struct RunRecord {
  CircuitConfig config;
  TrainConfig train_config;
  std::uint64_t target_seed = 0;
  std::uint64_t weight_seed = 0;

  std::vector<int> trajectory_iterations;
  std::vector<double> loss_curve;
  std::vector<std::vector<double>> alpha_trajectory;

  std::vector<double> initial_alpha;
  Model final_model;
  double r2_train = 0.0;
  double r2_test = 0.0;

  bool failed = false;
  std::string error;
};

/// Full-batch Adam on the train split of `dataset`. Frozen-prefactor
/// strategies keep alpha bit-identical across the whole trajectory (the
/// gradient is computed but never applied). Snapshots of (loss, alpha) are
/// taken at iteration 0, every record_every-th iteration, and the final
/// iteration. R^2 is evaluated on both splits with the final model.
RunRecord train(const Model& model, const Dataset& dataset,
                const SplitDataset& splits, const TrainConfig& config);

/// 1 - SS_res / SS_tot with SS_tot about the mean of the actuals.
/// Throws MetricError when the actuals carry no variance.
double r2_score(std::span<const double> predictions,
                std::span<const double> actuals);

/// Pooled |alpha_final - alpha_init| statistics over every prefactor of
/// every run. Quantiles use linear interpolation between order statistics.
struct DisplacementSummary {
  double mean = 0.0;
  double median = 0.0;
  double q25 = 0.0;
  double q75 = 0.0;
  double max = 0.0;
  int count = 0;
};

DisplacementSummary displacement_stats(std::span<const RunRecord> records);

/// Quantile of a sample by linear interpolation (numpy default scheme).
double quantile(std::vector<double> values, double q);

nlohmann::ordered_json run_record_to_json(const RunRecord& record);
RunRecord run_record_from_json(const nlohmann::json& j);

}  // namespace freqtune
