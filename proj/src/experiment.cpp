#include "uoi/experiment.hpp"

#include "uoi/parallel.hpp"
#include "uoi/resampling.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

namespace uoi {

namespace {

constexpr std::uint64_t kRepetitionSlot = 0x1000000000ULL;
constexpr std::uint64_t kSweepDataSlot = 0x2000000000ULL;

Vector predict(const DataSet& data, const CoefficientVector& coef) {
  return (data.features * coef.values).array() + coef.intercept;
}

MetricReport score_regression(const DataSet& test, const CoefficientVector& coef,
                              const std::optional<Vector>& beta_true) {
  MetricReport report;
  const Vector pred = predict(test, coef);
  const int nonzeros = static_cast<int>(coef.nonzero_indices().size());
  report.bic = bic_regression(test.response, pred, nonzeros);
  report.selection_ratio = selection_ratio(coef.values);
  const double mean = test.response.mean();
  if ((test.response.array() - mean).square().sum() > 0.0) {
    report.r_squared = r_squared(test.response, pred);
  }
  if (beta_true) {
    const Support truth = support_of(*beta_true);
    const Support est = support_of(coef.values);
    report.selection_accuracy = selection_accuracy(truth, est);
    report.estimation_rms = estimation_rms(*beta_true, coef.values);
    const auto [fp, fn] = confusion_counts(truth, est);
    report.false_positives = fp;
    report.false_negatives = fn;
  }
  return report;
}

MetricReport score_classification(const DataSet& test,
                                  const CoefficientVector& coef,
                                  const std::optional<Vector>& beta_true) {
  MetricReport report;
  const int nonzeros = static_cast<int>(coef.nonzero_indices().size());
  const double log_likelihood = -logistic_nll(test.features, test.response, coef);
  report.bic = bic_classification(log_likelihood, static_cast<int>(test.n_samples()), nonzeros);
  report.selection_ratio = selection_ratio(coef.values);
  if (beta_true) {
    const Support truth = support_of(*beta_true);
    const Support est = support_of(coef.values);
    report.selection_accuracy = selection_accuracy(truth, est);
    report.estimation_rms = estimation_rms(*beta_true, coef.values);
    const auto [fp, fn] = confusion_counts(truth, est);
    report.false_positives = fp;
    report.false_negatives = fn;
  }
  return report;
}

nlohmann::json metric_report_to_json(const MetricReport& r) {
  nlohmann::json j = nlohmann::json::object();
  if (r.selection_accuracy) j["selection_accuracy"] = *r.selection_accuracy;
  if (r.estimation_rms) j["estimation_rms"] = *r.estimation_rms;
  if (r.estimation_variance) j["estimation_variance"] = *r.estimation_variance;
  if (r.r_squared) j["r_squared"] = *r.r_squared;
  if (r.bic) j["bic"] = *r.bic;
  if (r.selection_ratio) j["selection_ratio"] = *r.selection_ratio;
  if (r.false_positives) j["false_positives"] = *r.false_positives;
  if (r.false_negatives) j["false_negatives"] = *r.false_negatives;
  return j;
}

nlohmann::json coefficients_to_json(const CoefficientVector& coef) {
  nlohmann::json j;
  j["p"] = coef.values.size();
  j["intercept"] = coef.intercept;
  nlohmann::json support = nlohmann::json::array();
  nlohmann::json values = nlohmann::json::array();
  for (Eigen::Index i = 0; i < coef.values.size(); ++i) {
    if (coef.values(i) != 0.0) {
      support.push_back(static_cast<int>(i));
      values.push_back(coef.values(i));
    }
  }
  j["support"] = std::move(support);
  j["values"] = std::move(values);
  return j;
}

std::vector<std::pair<std::string, std::optional<double>>>
metric_entries(const MethodMetrics& m) {
  auto opt_int = [](const std::optional<int>& v) -> std::optional<double> {
    if (v) return static_cast<double>(*v);
    return std::nullopt;
  };
  return {
      {"selection_accuracy", m.report.selection_accuracy},
      {"estimation_rms", m.report.estimation_rms},
      {"r_squared", m.report.r_squared},
      {"bic", m.report.bic},
      {"selection_ratio", m.report.selection_ratio},
      {"false_positives", opt_int(m.report.false_positives)},
      {"false_negatives", opt_int(m.report.false_negatives)},
      {"accuracy", m.accuracy},
  };
}

}  // namespace

void ExperimentConfig::validate() const {
  uoi.validate();
  if (repetitions < 1) {
    throw std::invalid_argument("ExperimentConfig: repetitions must be >= 1");
  }
  if (workers < 1) throw std::invalid_argument("ExperimentConfig: workers must be >= 1");
}

double classification_accuracy(const DataSet& data, const CoefficientVector& coef) {
  const Vector logits = predict(data, coef);
  int hits = 0;
  for (Eigen::Index i = 0; i < logits.size(); ++i) {
    const double label = logits(i) >= 0.0 ? 1.0 : 0.0;
    if (label == data.response(i)) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(logits.size());
}

namespace {

// Shared shape of both cross-validated baselines: fit the penalty path on
// standardized training columns, score every grid value on the validation
// block, keep the best (ties -> largest penalty).
CoefficientVector cv_path_baseline(const DataSet& train, const DataSet& validation,
                                   int grid_size, double grid_ratio,
                                   const SolverOptions& opts, Task task) {
  train.validate();
  validation.validate();
  DataSet work = train;
  Vector scale = Vector::Ones(train.n_features());
  if (!train.column_standardized) {
    for (Eigen::Index j = 0; j < work.features.cols(); ++j) {
      const double norm = work.features.col(j).norm();
      if (norm > 0.0) {
        scale(j) = norm;
        work.features.col(j) /= norm;
      }
    }
    work.column_standardized = true;
  }
  const RegularizationGrid grid = make_lambda_grid(work, grid_size, grid_ratio, task);

  CoefficientVector best;
  double best_score = 0.0;
  bool have_best = false;
  for (double lambda : grid.values) {
    const FitResult fit = task == Task::regression
                              ? fit_lasso(work, lambda, opts)
                              : fit_logistic_l1(work, lambda, opts);
    CoefficientVector candidate = fit.coef;
    candidate.values.array() /= scale.array();
    double score;
    if (task == Task::regression) {
      score = (validation.response - predict(validation, candidate)).squaredNorm();
    } else {
      score = logistic_nll(validation.features, validation.response, candidate);
    }
    if (!have_best || score < best_score) {
      have_best = true;
      best_score = score;
      best = std::move(candidate);
    }
  }
  return best;
}

}  // namespace

CoefficientVector cv_lasso(const DataSet& train, const DataSet& validation,
                           int grid_size, double grid_ratio,
                           const SolverOptions& opts) {
  return cv_path_baseline(train, validation, grid_size, grid_ratio, opts,
                          Task::regression);
}

CoefficientVector cv_logistic_l1(const DataSet& train, const DataSet& validation,
                                 int grid_size, double grid_ratio,
                                 const SolverOptions& opts) {
  return cv_path_baseline(train, validation, grid_size, grid_ratio, opts,
                          Task::classification);
}

nlohmann::json model_estimate_to_json(const ModelEstimate& estimate,
                                      Eigen::Index p) {
  nlohmann::json j;
  j["coefficients"] = coefficients_to_json(estimate.coefficients);
  j["support"] = estimate.support;
  j["per_bootstrap_supports"] = estimate.per_bootstrap_supports;
  j["per_bootstrap_losses"] = estimate.per_bootstrap_losses;
  j["degenerate"] = estimate.degenerate;
  nlohmann::json warnings = nlohmann::json::array();
  for (const auto& w : estimate.warnings) {
    warnings.push_back({{"resample", w.resample_index},
                        {"lambda_index", w.lambda_index},
                        {"message", w.message}});
  }
  j["warnings"] = std::move(warnings);
  j["p"] = p;
  return j;
}

ResultRecord run_experiment(const DataSet& data,
                            const std::optional<Vector>& beta_true,
                            const ExperimentConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  data.validate();
  config.validate();
  if (beta_true && beta_true->size() != data.n_features()) {
    throw std::invalid_argument("run_experiment: beta_true length != p");
  }
  const int n = static_cast<int>(data.n_samples());
  if (n < 10) {
    throw std::invalid_argument("run_experiment: needs n >= 10 for 80-10-10 splits");
  }

  const int reps = config.repetitions;
  const int outer_workers = reps > 1 ? config.workers : 1;
  const int inner_workers = reps > 1 ? 1 : config.workers;

  std::vector<RepetitionResult> results(static_cast<std::size_t>(reps));
  std::vector<ModelEstimate> estimates(static_cast<std::size_t>(reps));

  parallel_for(reps, outer_workers, [&](int r) {
    RepetitionResult& rep = results[static_cast<std::size_t>(r)];
    rep.repetition = r;
    try {
      const SeedSpec rep_seed =
          derive_stream(config.seed, kRepetitionSlot + static_cast<std::uint64_t>(r));
      const ResamplePlan plan = split_80_10_10(n, derive_stream(rep_seed, 0));
      const DataSet train = take_rows(data, plan.train());
      const DataSet selection = take_rows(data, plan.selection());
      const DataSet test = take_rows(data, plan.test());

      UoIConfig uoi_config = config.uoi;
      uoi_config.seed = derive_stream(rep_seed, 1);
      uoi_config.workers = inner_workers;
      const ModelEstimate estimate = run_uoi(train, uoi_config, config.task);
      estimates[static_cast<std::size_t>(r)] = estimate;

      MethodMetrics uoi_metrics;
      uoi_metrics.method = "uoi";
      uoi_metrics.coefficients = estimate.coefficients;
      if (config.task == Task::regression) {
        uoi_metrics.report = score_regression(test, estimate.coefficients, beta_true);
      } else {
        uoi_metrics.report = score_classification(test, estimate.coefficients, beta_true);
        uoi_metrics.accuracy = classification_accuracy(test, estimate.coefficients);
      }
      rep.methods.push_back(std::move(uoi_metrics));

      if (config.with_baselines) {
        if (config.task == Task::regression) {
          MethodMetrics lasso_metrics;
          lasso_metrics.method = "lasso";
          lasso_metrics.coefficients =
              cv_lasso(train, selection, config.uoi.grid_size, config.uoi.grid_ratio,
                       config.uoi.solver);
          lasso_metrics.report =
              score_regression(test, lasso_metrics.coefficients, beta_true);
          rep.methods.push_back(std::move(lasso_metrics));
          if (train.n_samples() > train.n_features() + 1) {
            Support full(static_cast<std::size_t>(train.n_features()));
            for (std::size_t j = 0; j < full.size(); ++j) full[j] = static_cast<int>(j);
            MethodMetrics ols_metrics;
            ols_metrics.method = "ols";
            ols_metrics.coefficients = fit_ols(train, full);
            ols_metrics.report =
                score_regression(test, ols_metrics.coefficients, beta_true);
            rep.methods.push_back(std::move(ols_metrics));
          }
        } else {
          MethodMetrics logistic_metrics;
          logistic_metrics.method = "logistic_l1";
          logistic_metrics.coefficients =
              cv_logistic_l1(train, selection, config.uoi.grid_size,
                             config.uoi.grid_ratio, config.uoi.solver);
          logistic_metrics.report =
              score_classification(test, logistic_metrics.coefficients, beta_true);
          logistic_metrics.accuracy =
              classification_accuracy(test, logistic_metrics.coefficients);
          rep.methods.push_back(std::move(logistic_metrics));
        }
      }
    } catch (const std::exception& e) {
      rep.failed = true;
      rep.message = e.what();
      rep.methods.clear();
    }
  });

  ResultRecord record;
  record.task = config.task == Task::regression ? "regression" : "classification";
  record.repetitions = std::move(results);
  for (const auto& rep : record.repetitions) {
    if (rep.failed) ++record.failed_repetitions;
  }
  if (record.failed_repetitions == reps) {
    throw std::runtime_error("run_experiment: every repetition failed (" +
                             record.repetitions.front().message + ")");
  }
  for (std::size_t r = 0; r < record.repetitions.size(); ++r) {
    if (!record.repetitions[r].failed) {
      record.estimate = estimates[r];
      break;
    }
  }

  // Aggregate mean/sd per (method, metric) over non-failed repetitions.
  std::vector<std::string> methods;
  for (const auto& rep : record.repetitions) {
    for (const auto& m : rep.methods) {
      if (std::find(methods.begin(), methods.end(), m.method) == methods.end()) {
        methods.push_back(m.method);
      }
    }
  }
  for (const auto& method : methods) {
    std::vector<std::pair<std::string, std::vector<double>>> columns;
    std::vector<CoefficientVector> coef_draws;
    for (const auto& rep : record.repetitions) {
      if (rep.failed) continue;
      for (const auto& m : rep.methods) {
        if (m.method != method) continue;
        coef_draws.push_back(m.coefficients);
        for (const auto& [name, value] : metric_entries(m)) {
          if (!value) continue;
          auto it = std::find_if(columns.begin(), columns.end(),
                                 [&](const auto& c) { return c.first == name; });
          if (it == columns.end()) {
            columns.push_back({name, {*value}});
          } else {
            it->second.push_back(*value);
          }
        }
      }
    }
    for (const auto& [name, values] : columns) {
      AggregateEntry entry;
      entry.method = method;
      entry.metric = name;
      entry.count = static_cast<int>(values.size());
      double mean = 0.0;
      for (double v : values) mean += v;
      mean /= static_cast<double>(values.size());
      double ss = 0.0;
      for (double v : values) ss += (v - mean) * (v - mean);
      entry.mean = mean;
      entry.sd = values.size() > 1
                     ? std::sqrt(ss / static_cast<double>(values.size() - 1))
                     : 0.0;
      record.aggregates.push_back(entry);
    }
    if (coef_draws.size() >= 2) {
      AggregateEntry entry;
      entry.method = method;
      entry.metric = "estimation_variance";
      entry.mean = estimation_variance(coef_draws);
      entry.sd = 0.0;
      entry.count = static_cast<int>(coef_draws.size());
      record.coefficient_variance.push_back(entry);
    }
  }

  nlohmann::json cfg;
  cfg["task"] = record.task;
  cfg["b1"] = config.uoi.b1;
  cfg["b2"] = config.uoi.b2;
  cfg["grid_size"] = config.uoi.grid_size;
  cfg["grid_ratio"] = config.uoi.grid_ratio;
  cfg["explicit_grid"] = config.uoi.grid.values;
  cfg["variant"] = config.uoi.selection_variant == SelectionVariant::bolasso
                       ? "bolasso"
                       : "stability";
  cfg["stability_alpha"] = config.uoi.stability_alpha;
  cfg["stability_pi_thr"] = config.uoi.stability_pi_thr;
  cfg["stability_subsamples"] = config.uoi.stability_subsamples;
  cfg["tol"] = config.uoi.solver.tol;
  cfg["max_iter"] = config.uoi.solver.max_iter;
  cfg["repetitions"] = config.repetitions;
  cfg["workers"] = config.workers;
  cfg["with_baselines"] = config.with_baselines;
  cfg["seed"] = config.seed.master_seed;
  cfg["stream"] = config.seed.stream_id;
  record.config_json = std::move(cfg);

  record.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return record;
}

nlohmann::json ResultRecord::to_json(bool include_timing) const {
  nlohmann::json j;
  j["config"] = config_json;
  j["task"] = task;
  j["estimate"] = model_estimate_to_json(estimate, estimate.coefficients.values.size());
  nlohmann::json reps = nlohmann::json::array();
  for (const auto& rep : repetitions) {
    nlohmann::json jr;
    jr["repetition"] = rep.repetition;
    jr["failed"] = rep.failed;
    if (rep.failed) jr["message"] = rep.message;
    nlohmann::json methods = nlohmann::json::array();
    for (const auto& m : rep.methods) {
      nlohmann::json jm;
      jm["method"] = m.method;
      jm["metrics"] = metric_report_to_json(m.report);
      if (m.accuracy) jm["accuracy"] = *m.accuracy;
      jm["coefficients"] = coefficients_to_json(m.coefficients);
      methods.push_back(std::move(jm));
    }
    jr["methods"] = std::move(methods);
    reps.push_back(std::move(jr));
  }
  j["repetitions"] = std::move(reps);
  nlohmann::json aggs = nlohmann::json::array();
  for (const auto& a : aggregates) {
    aggs.push_back({{"method", a.method},
                    {"metric", a.metric},
                    {"mean", a.mean},
                    {"sd", a.sd},
                    {"count", a.count}});
  }
  j["aggregates"] = std::move(aggs);
  nlohmann::json variances = nlohmann::json::array();
  for (const auto& a : coefficient_variance) {
    variances.push_back({{"method", a.method},
                         {"metric", a.metric},
                         {"value", a.mean},
                         {"count", a.count}});
  }
  j["coefficient_variance"] = std::move(variances);
  j["failed_repetitions"] = failed_repetitions;
  if (include_timing) {
    j["timing"] = {{"wall_seconds", wall_seconds}};
  }
  return j;
}

std::vector<SweepRow> run_sweep(const SweepConfig& config) {
  if (config.values.empty()) {
    throw std::invalid_argument("run_sweep: no sweep values given");
  }
  if (config.seeds_per_value < 1) {
    throw std::invalid_argument("run_sweep: seeds_per_value must be >= 1");
  }
  const bool sweep_b1 = config.parameter == "b1";
  const bool sweep_b2 = config.parameter == "b2";
  const bool sweep_noise = config.parameter == "noise";
  const bool sweep_sparsity = config.parameter == "sparsity";
  if (!sweep_b1 && !sweep_b2 && !sweep_noise && !sweep_sparsity) {
    throw std::invalid_argument("run_sweep: parameter must be b1, b2, noise or sparsity");
  }

  std::vector<SweepRow> rows;
  for (std::size_t vi = 0; vi < config.values.size(); ++vi) {
    const double value = config.values[vi];
    GeneratorSpec gen = config.generator;
    UoIConfig uoi_config = config.uoi;
    if (sweep_b1) uoi_config.b1 = static_cast<int>(value);
    if (sweep_b2) uoi_config.b2 = static_cast<int>(value);
    if (sweep_noise) gen.noise_multiplier = value;
    if (sweep_sparsity) {
      if (!(value >= 0.0 && value < 1.0)) {
        throw std::invalid_argument("run_sweep: sparsity values must be in [0,1)");
      }
      gen.p = std::max(gen.k, static_cast<int>(std::lround(gen.k / (1.0 - value))));
    }
    gen.validate();
    uoi_config.validate();

    const int seeds = config.seeds_per_value;
    std::vector<double> fp(static_cast<std::size_t>(seeds)), fn(fp), acc(fp), rms(fp), ratio(fp);
    std::vector<CoefficientVector> draws(static_cast<std::size_t>(seeds));
    uoi_config.workers = 1;
    parallel_for(seeds, config.workers, [&](int s) {
      GeneratorSpec local = gen;
      // Same data seed across swept values: sweeps compare paired runs.
      local.seed = derive_stream(config.generator.seed,
                                 kSweepDataSlot + static_cast<std::uint64_t>(s));
      const CoefficientVector beta = generate_beta(local);
      const DataSet data = config.task == Task::regression
                               ? generate_dataset(local, beta)
                               : generate_classification_dataset(local, beta);
      UoIConfig run_config = uoi_config;
      run_config.seed = derive_stream(config.uoi.seed, static_cast<std::uint64_t>(s));
      const ModelEstimate estimate = run_uoi(data, run_config, config.task);

      const Support truth = support_of(beta.values);
      const auto [fp_count, fn_count] = confusion_counts(truth, estimate.support);
      const std::size_t slot = static_cast<std::size_t>(s);
      fp[slot] = static_cast<double>(fp_count);
      fn[slot] = static_cast<double>(fn_count);
      acc[slot] = selection_accuracy(truth, estimate.support);
      rms[slot] = estimation_rms(beta.values, estimate.coefficients.values);
      ratio[slot] = selection_ratio(estimate.coefficients.values);
      draws[slot] = estimate.coefficients;
    });

    SweepRow row;
    row.value = value;
    auto mean_of = [&](const std::vector<double>& v) {
      double total = 0.0;
      for (double x : v) total += x;
      return total / static_cast<double>(v.size());
    };
    row.mean_false_positives = mean_of(fp);
    row.mean_false_negatives = mean_of(fn);
    row.mean_selection_accuracy = mean_of(acc);
    row.mean_estimation_rms = mean_of(rms);
    row.mean_selection_ratio = mean_of(ratio);
    row.coefficient_variance = seeds >= 2 ? estimation_variance(draws) : 0.0;
    rows.push_back(row);
  }
  return rows;
}

nlohmann::json sweep_to_json(const SweepConfig& config,
                             const std::vector<SweepRow>& rows) {
  nlohmann::json j;
  j["parameter"] = config.parameter;
  j["task"] = config.task == Task::regression ? "regression" : "classification";
  j["seeds_per_value"] = config.seeds_per_value;
  j["generator"] = {{"n", config.generator.n},
                    {"p", config.generator.p},
                    {"k", config.generator.k},
                    {"distribution", to_string(config.generator.distribution)},
                    {"noise_multiplier", config.generator.noise_multiplier},
                    {"beta_min", config.generator.beta_min},
                    {"beta_max", config.generator.beta_max},
                    {"seed", config.generator.seed.master_seed}};
  j["uoi"] = {{"b1", config.uoi.b1},
              {"b2", config.uoi.b2},
              {"grid_size", config.uoi.grid_size},
              {"grid_ratio", config.uoi.grid_ratio},
              {"seed", config.uoi.seed.master_seed}};
  nlohmann::json out_rows = nlohmann::json::array();
  for (const auto& row : rows) {
    out_rows.push_back({{"value", row.value},
                        {"mean_false_positives", row.mean_false_positives},
                        {"mean_false_negatives", row.mean_false_negatives},
                        {"mean_selection_accuracy", row.mean_selection_accuracy},
                        {"mean_estimation_rms", row.mean_estimation_rms},
                        {"mean_selection_ratio", row.mean_selection_ratio},
                        {"coefficient_variance", row.coefficient_variance}});
  }
  j["rows"] = std::move(out_rows);
  return j;
}

}  // namespace uoi
