#include "freqtune/training.hpp"

#include <algorithm>
#include <cmath>

#include "freqtune/errors.hpp"

namespace freqtune {

namespace {

std::vector<double> gather(const std::vector<double>& values,
                           const std::vector<int>& indices) {
  std::vector<double> out;
  out.reserve(indices.size());
  for (int i : indices) out.push_back(values[i]);
  return out;
}

double loss_only(const Model& model, std::span<const double> xs,
                 std::span<const double> ys) {
  const CompiledCircuit cc = compile(model);
  const ForwardCache cache = forward_batched(cc, xs);
  const Eigen::VectorXd values = values_from_cache(cc, cache);
  double loss = 0.0;
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    const double err = values(i) - ys[i];
    loss += err * err;
  }
  return loss / static_cast<double>(xs.size());
}

std::vector<double> predict(const Model& model, std::span<const double> xs) {
  const CompiledCircuit cc = compile(model);
  const ForwardCache cache = forward_batched(cc, xs);
  const Eigen::VectorXd values = values_from_cache(cc, cache);
  return {values.data(), values.data() + values.size()};
}

}  // namespace

RunRecord train(const Model& model, const Dataset& dataset,
                const SplitDataset& splits, const TrainConfig& config) {
  config.validate();
  if (splits.train.empty())
    throw ConfigError("train: train split must be nonempty");

  const std::vector<double> xs_train = gather(dataset.xs, splits.train);
  const std::vector<double> ys_train = gather(dataset.ys, splits.train);
  const std::vector<double> xs_test = gather(dataset.xs, splits.test);
  const std::vector<double> ys_test = gather(dataset.ys, splits.test);

  RunRecord rec;
  rec.config = model.config;
  rec.train_config = config;
  rec.initial_alpha = model.alpha;

  Model current = model;
  AdamState state = AdamState::zeros_like(current);
  const bool alpha_trainable = model.config.init.trainable();
  const std::vector<double> frozen_alpha = model.alpha;

  auto snapshot = [&](int iteration, double loss) {
    rec.trajectory_iterations.push_back(iteration);
    rec.loss_curve.push_back(loss);
    rec.alpha_trajectory.push_back(current.alpha);
  };

  for (int it = 1; it <= config.iterations; ++it) {
    auto [loss, grad] = loss_and_grad(current, xs_train, ys_train);
    if (!std::isfinite(loss))
      throw NumericError("train: loss became non-finite at iteration " +
                         std::to_string(it));
    if ((it - 1) % config.record_every == 0) snapshot(it - 1, loss);
    adam_step(current, grad, state, config);
    if (!alpha_trainable) current.alpha = frozen_alpha;
  }
  snapshot(config.iterations, loss_only(current, xs_train, ys_train));

  rec.final_model = current;
  rec.r2_train = r2_score(predict(current, xs_train), ys_train);
  rec.r2_test = r2_score(predict(current, xs_test), ys_test);
  return rec;
}

double r2_score(std::span<const double> predictions,
                std::span<const double> actuals) {
  if (predictions.size() != actuals.size() || actuals.empty())
    throw MetricError("r2_score: need equal nonzero-length inputs");
  double mean = 0.0;
  for (double y : actuals) mean += y;
  mean /= static_cast<double>(actuals.size());
  double ss_res = 0.0, ss_tot = 0.0;
  for (std::size_t i = 0; i < actuals.size(); ++i) {
    ss_res += (actuals[i] - predictions[i]) * (actuals[i] - predictions[i]);
    ss_tot += (actuals[i] - mean) * (actuals[i] - mean);
  }
  if (!(ss_tot > 0.0))
    throw MetricError("r2_score: actuals have zero variance");
  return 1.0 - ss_res / ss_tot;
}

double quantile(std::vector<double> values, double q) {
  if (values.empty()) throw MetricError("quantile: empty sample");
  std::sort(values.begin(), values.end());
  const double pos = q * static_cast<double>(values.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = static_cast<std::size_t>(std::ceil(pos));
  const double frac = pos - static_cast<double>(lo);
  return values[lo] * (1.0 - frac) + values[hi] * frac;
}

DisplacementSummary displacement_stats(std::span<const RunRecord> records) {
  if (records.empty())
    throw ConfigError("displacement_stats: need at least one record");
  std::vector<double> pooled;
  for (const RunRecord& rec : records) {
    if (rec.failed) continue;
    for (std::size_t i = 0; i < rec.initial_alpha.size(); ++i)
      pooled.push_back(
          std::abs(rec.final_model.alpha[i] - rec.initial_alpha[i]));
  }
  DisplacementSummary s;
  s.count = static_cast<int>(pooled.size());
  if (pooled.empty()) return s;
  double acc = 0.0;
  for (double d : pooled) acc += d;
  s.mean = acc / static_cast<double>(pooled.size());
  s.median = quantile(pooled, 0.5);
  s.q25 = quantile(pooled, 0.25);
  s.q75 = quantile(pooled, 0.75);
  s.max = *std::max_element(pooled.begin(), pooled.end());
  return s;
}

nlohmann::ordered_json run_record_to_json(const RunRecord& record) {
  nlohmann::ordered_json j;
  j["config"] = config_to_json(record.config);
  j["train_config"] = {{"learning_rate", record.train_config.learning_rate},
                       {"iterations", record.train_config.iterations},
                       {"adam_beta1", record.train_config.adam_beta1},
                       {"adam_beta2", record.train_config.adam_beta2},
                       {"adam_eps", record.train_config.adam_eps},
                       {"seed", record.train_config.seed},
                       {"record_every", record.train_config.record_every}};
  j["target_seed"] = record.target_seed;
  j["weight_seed"] = record.weight_seed;
  j["trajectory"] = {{"iterations", record.trajectory_iterations},
                     {"loss", record.loss_curve},
                     {"alpha", record.alpha_trajectory}};
  j["initial_alpha"] = record.initial_alpha;
  j["failed"] = record.failed;
  if (record.failed) {
    j["error"] = record.error;
  } else {
    j["final_model"] = model_to_json(record.final_model);
    j["r2_train"] = record.r2_train;
    j["r2_test"] = record.r2_test;
  }
  return j;
}

RunRecord run_record_from_json(const nlohmann::json& j) {
  RunRecord rec;
  rec.config = config_from_json(j.at("config"));
  const auto& tc = j.at("train_config");
  rec.train_config.learning_rate = tc.at("learning_rate").get<double>();
  rec.train_config.iterations = tc.at("iterations").get<int>();
  rec.train_config.adam_beta1 = tc.at("adam_beta1").get<double>();
  rec.train_config.adam_beta2 = tc.at("adam_beta2").get<double>();
  rec.train_config.adam_eps = tc.at("adam_eps").get<double>();
  rec.train_config.seed = tc.at("seed").get<std::uint64_t>();
  rec.train_config.record_every = tc.at("record_every").get<int>();
  rec.target_seed = j.at("target_seed").get<std::uint64_t>();
  rec.weight_seed = j.at("weight_seed").get<std::uint64_t>();
  const auto& traj = j.at("trajectory");
  rec.trajectory_iterations = traj.at("iterations").get<std::vector<int>>();
  rec.loss_curve = traj.at("loss").get<std::vector<double>>();
  rec.alpha_trajectory =
      traj.at("alpha").get<std::vector<std::vector<double>>>();
  rec.initial_alpha = j.at("initial_alpha").get<std::vector<double>>();
  rec.failed = j.at("failed").get<bool>();
  if (rec.failed) {
    rec.error = j.at("error").get<std::string>();
  } else {
    rec.final_model = model_from_json(j.at("final_model"));
    rec.r2_train = j.at("r2_train").get<double>();
    rec.r2_test = j.at("r2_test").get<double>();
  }
  return rec;
}

}  // namespace freqtune
