#pragma once

#include "uoi/metrics.hpp"
#include "uoi/synthetic.hpp"
#include "uoi/uoi.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace uoi {

struct ExperimentConfig {
  Task task = Task::regression;
  UoIConfig uoi;
  int repetitions = 100;  // 80-10-10 splits
  int workers = 1;
  bool with_baselines = false;
  SeedSpec seed;

  void validate() const;
};

struct MethodMetrics {
  std::string method;  // "uoi", "lasso", "ols", "logistic_l1"
  MetricReport report;
  std::optional<double> accuracy;  // classification hit rate on the test block
  CoefficientVector coefficients;  // serialized sparsely
};

struct RepetitionResult {
  int repetition = 0;
  bool failed = false;
  std::string message;
  std::vector<MethodMetrics> methods;
};

struct AggregateEntry {
  std::string method;
  std::string metric;
  double mean = 0.0;
  double sd = 0.0;
  int count = 0;
};

struct ResultRecord {
  std::string task;
  ModelEstimate estimate;  // fit on the first repetition's training block
  std::vector<RepetitionResult> repetitions;
  std::vector<AggregateEntry> aggregates;  // recomputable from repetitions
  // Coefficient variance across repetitions, per method.
  std::vector<AggregateEntry> coefficient_variance;
  int failed_repetitions = 0;
  double wall_seconds = 0.0;
  nlohmann::json config_json;  // echo of the resolved configuration

  nlohmann::json to_json(bool include_timing = true) const;
};

/// The 100x(80-10-10) protocol: per repetition, fit on the 80% block
/// (resampling inside it), use the first 10% block for any meta-parameter
/// choice (baselines pick their penalty there), report metrics on the final
/// 10%. Failed repetitions are flagged, counted, and excluded from
/// aggregates.
ResultRecord run_experiment(const DataSet& data,
                            const std::optional<Vector>& beta_true,
                            const ExperimentConfig& config);

/// Plain cross-validated lasso baseline: penalty path fit on the training
/// block, value chosen by validation MSE, no refit. Coefficients come back
/// on the original column scale.
CoefficientVector cv_lasso(const DataSet& train, const DataSet& validation,
                           int grid_size, double grid_ratio,
                           const SolverOptions& opts);

/// Plain L1-logistic baseline, penalty chosen by validation NLL.
CoefficientVector cv_logistic_l1(const DataSet& train,
                                 const DataSet& validation, int grid_size,
                                 double grid_ratio, const SolverOptions& opts);

/// Fraction of correct {0,1} predictions at threshold 0.5.
double classification_accuracy(const DataSet& data,
                               const CoefficientVector& coef);

nlohmann::json model_estimate_to_json(const ModelEstimate& estimate,
                                      Eigen::Index p);

struct SweepConfig {
  std::string parameter;  // "b1", "b2", "noise", "sparsity"
  std::vector<double> values;
  GeneratorSpec generator;
  UoIConfig uoi;
  Task task = Task::regression;
  int seeds_per_value = 20;
  int workers = 1;
};

struct SweepRow {
  double value = 0.0;
  double mean_false_positives = 0.0;
  double mean_false_negatives = 0.0;
  double mean_selection_accuracy = 0.0;
  double mean_estimation_rms = 0.0;
  double mean_selection_ratio = 0.0;
  double coefficient_variance = 0.0;  // across seeds
};

/// One aggregate row per swept value. Each seed generates fresh data and
/// runs the full pipeline on it, scoring against the known coefficients;
/// data and resampling seeds are shared across values so sweeps are paired.
std::vector<SweepRow> run_sweep(const SweepConfig& config);

nlohmann::json sweep_to_json(const SweepConfig& config,
                             const std::vector<SweepRow>& rows);

}  // namespace uoi
