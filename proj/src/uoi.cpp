#include "uoi/uoi.hpp"

#include "uoi/parallel.hpp"
#include "uoi/resampling.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace uoi {

namespace {

// Stream slots; disjoint ranges keep every resampled task independent.
constexpr std::uint64_t kSelectionSlot = 0x0100000000ULL;
constexpr std::uint64_t kStabilitySlot = 0x0200000000ULL;
constexpr std::uint64_t kEstimationSlot = 0x0300000000ULL;

}  // namespace

void UoIConfig::validate() const {
  if (b1 < 1 || b2 < 1) throw std::invalid_argument("UoIConfig: b1 and b2 must be >= 1");
  if (!grid.values.empty()) grid.validate();
  if (grid.values.empty() && grid_size < 1) {
    throw std::invalid_argument("UoIConfig: grid_size must be >= 1");
  }
  if (grid.values.empty() && !(grid_ratio > 0.0 && grid_ratio < 1.0)) {
    throw std::invalid_argument("UoIConfig: grid_ratio must be in (0,1)");
  }
  if (workers < 1) throw std::invalid_argument("UoIConfig: workers must be >= 1");
  if (selection_variant == SelectionVariant::stability) {
    if (!(stability_alpha > 0.0 && stability_alpha <= 1.0)) {
      throw std::invalid_argument("UoIConfig: stability_alpha must be in (0,1]");
    }
    if (!(stability_pi_thr > 0.0 && stability_pi_thr <= 1.0)) {
      throw std::invalid_argument("UoIConfig: stability_pi_thr must be in (0,1]");
    }
    if (stability_subsamples < 1) {
      throw std::invalid_argument("UoIConfig: stability_subsamples must be >= 1");
    }
  }
}

Support intersect_supports(const std::vector<Support>& supports) {
  if (supports.empty()) {
    throw std::invalid_argument("intersect_supports: empty list");
  }
  Support acc = supports.front();
  for (std::size_t i = 1; i < supports.size() && !acc.empty(); ++i) {
    acc = intersect_two(acc, supports[i]);
  }
  return acc;
}

namespace {

RegularizationGrid resolve_grid(const DataSet& data, const UoIConfig& config,
                                Task task) {
  if (!config.grid.values.empty()) return config.grid;
  return make_lambda_grid(data, config.grid_size, config.grid_ratio, task);
}

FitResult fit_selection_cell(const DataSet& sample, double lambda, Task task,
                             const SolverOptions& opts) {
  return task == Task::regression ? fit_lasso(sample, lambda, opts)
                                  : fit_logistic_l1(sample, lambda, opts);
}

SupportFamily select_bolasso_impl(const DataSet& data, const UoIConfig& config,
                                  Task task) {
  data.validate();
  config.validate();
  const RegularizationGrid grid = resolve_grid(data, config, task);
  const int q = static_cast<int>(grid.size());
  const int n = static_cast<int>(data.n_samples());

  // One slot per (bootstrap, lambda) cell; each holds that cell's support.
  std::vector<Support> cells(static_cast<std::size_t>(config.b1 * q));
  std::vector<char> cell_failed(cells.size(), 0);

  parallel_for(config.b1 * q, config.workers, [&](int task_index) {
    const int k = task_index / q;
    const int j = task_index % q;
    const SeedSpec boot_seed = derive_stream(config.seed, kSelectionSlot + static_cast<std::uint64_t>(k));
    const DataSet sample = take_rows(data, bootstrap_indices(n, boot_seed).indices());
    const FitResult fit = fit_selection_cell(sample, grid.values[static_cast<std::size_t>(j)],
                                             task, config.solver);
    if (fit.converged) {
      cells[static_cast<std::size_t>(task_index)] = support_of(fit.coef.values);
    } else {
      cell_failed[static_cast<std::size_t>(task_index)] = 1;
    }
  });

  SupportFamily family;
  family.per_lambda.resize(static_cast<std::size_t>(q));
  for (int j = 0; j < q; ++j) {
    std::vector<Support> column;
    column.reserve(static_cast<std::size_t>(config.b1));
    for (int k = 0; k < config.b1; ++k) {
      const std::size_t idx = static_cast<std::size_t>(k * q + j);
      if (cell_failed[idx]) {
        family.warnings.push_back(
            {k, j, "selection fit did not converge; cell contributes empty support"});
        column.emplace_back();  // empty support
      } else {
        column.push_back(cells[idx]);
      }
    }
    family.per_lambda[static_cast<std::size_t>(j)] = intersect_supports(column);
  }
  return family;
}

}  // namespace

SupportFamily select_bolasso(const DataSet& data, const UoIConfig& config) {
  return select_bolasso_impl(data, config, Task::regression);
}

SupportFamily select_stability(const DataSet& data, const UoIConfig& config) {
  data.validate();
  config.validate();
  if (config.selection_variant != SelectionVariant::stability) {
    throw std::invalid_argument("select_stability: config variant is not stability");
  }
  const RegularizationGrid grid = resolve_grid(data, config, Task::regression);
  const int q = static_cast<int>(grid.size());
  const int n = static_cast<int>(data.n_samples());
  const Eigen::Index p = data.n_features();
  const int subsamples = config.stability_subsamples;

  // counts[s] is that subsample's q x p selection indicator block.
  std::vector<std::vector<char>> hits(static_cast<std::size_t>(subsamples));
  std::vector<std::vector<CellWarning>> warnings(static_cast<std::size_t>(subsamples));

  parallel_for(subsamples, config.workers, [&](int s) {
    const SeedSpec sub_seed = derive_stream(config.seed, kStabilitySlot + static_cast<std::uint64_t>(s));
    const DataSet sample =
        take_rows(data, half_subsample(n, derive_stream(sub_seed, 0)).indices());
    // Randomized-lasso penalty weights, one per feature, reused across the
    // grid (scaled by each lambda).
    RngStream weight_rng(derive_stream(sub_seed, 1));
    Vector weights(p);
    for (Eigen::Index f = 0; f < p; ++f) {
      weights(f) = config.stability_alpha +
                   (1.0 - config.stability_alpha) * weight_rng.uniform01();
    }
    auto& my_hits = hits[static_cast<std::size_t>(s)];
    my_hits.assign(static_cast<std::size_t>(q) * static_cast<std::size_t>(p), 0);
    for (int j = 0; j < q; ++j) {
      const FitResult fit = fit_lasso_weighted(
          sample, weights * grid.values[static_cast<std::size_t>(j)], config.solver);
      if (!fit.converged) {
        warnings[static_cast<std::size_t>(s)].push_back(
            {s, j, "stability fit did not converge; subsample contributes no selections"});
        continue;
      }
      for (Eigen::Index f = 0; f < p; ++f) {
        if (fit.coef.values(f) != 0.0) {
          my_hits[static_cast<std::size_t>(j) * static_cast<std::size_t>(p) +
                  static_cast<std::size_t>(f)] = 1;
        }
      }
    }
  });

  SupportFamily family;
  family.per_lambda.resize(static_cast<std::size_t>(q));
  const double threshold =
      config.stability_pi_thr * static_cast<double>(subsamples) - 1e-9;
  for (int j = 0; j < q; ++j) {
    Support support;
    for (Eigen::Index f = 0; f < p; ++f) {
      int count = 0;
      for (int s = 0; s < subsamples; ++s) {
        count += hits[static_cast<std::size_t>(s)]
                     [static_cast<std::size_t>(j) * static_cast<std::size_t>(p) +
                      static_cast<std::size_t>(f)];
      }
      if (static_cast<double>(count) >= threshold) {
        support.push_back(static_cast<int>(f));
      }
    }
    family.per_lambda[static_cast<std::size_t>(j)] = std::move(support);
  }
  for (auto& w : warnings) {
    family.warnings.insert(family.warnings.end(), w.begin(), w.end());
  }
  return family;
}

namespace {

struct BootstrapChoice {
  CoefficientVector coef;
  Support support;
  double loss = 0.0;
  bool oob_empty = false;
};

DataSet restrict_columns(const DataSet& data, const Support& support) {
  DataSet out;
  out.features.resize(data.n_samples(), static_cast<Eigen::Index>(support.size()));
  for (std::size_t c = 0; c < support.size(); ++c) {
    out.features.col(static_cast<Eigen::Index>(c)) = data.features.col(support[c]);
  }
  out.response = data.response;
  return out;
}

// Least-squares refit for regression; unpenalized logistic refit for
// classification. Returned coefficients live in the full p-dim space.
CoefficientVector refit_on_support(const DataSet& train, const Support& support,
                                   Task task, const SolverOptions& opts) {
  if (task == Task::regression) {
    return fit_ols(train, support);
  }
  const DataSet restricted = restrict_columns(train, support);
  const FitResult fit = fit_logistic_l1(restricted, 0.0, opts);
  CoefficientVector coef;
  coef.values = Vector::Zero(train.n_features());
  for (std::size_t c = 0; c < support.size(); ++c) {
    coef.values(support[c]) = fit.coef.values(static_cast<Eigen::Index>(c));
  }
  coef.intercept = fit.coef.intercept;
  return coef;
}

double held_out_loss(const DataSet& eval, const CoefficientVector& coef,
                     Task task) {
  if (task == Task::regression) {
    const Vector pred = (eval.features * coef.values).array() + coef.intercept;
    return (eval.response - pred).squaredNorm() /
           static_cast<double>(eval.n_samples());
  }
  return logistic_nll(eval.features, eval.response, coef) /
         static_cast<double>(eval.n_samples());
}

}  // namespace

ModelEstimate estimate_union(const DataSet& data, const SupportFamily& family,
                             const UoIConfig& config, Task task) {
  data.validate();
  config.validate();
  if (family.per_lambda.empty()) {
    throw std::invalid_argument("estimate_union: empty support family");
  }
  const int n = static_cast<int>(data.n_samples());
  const Eigen::Index p = data.n_features();

  // Duplicate supports waste identical refits; keep first occurrence so the
  // argmin tie-break (lowest grid index) is preserved.
  std::vector<Support> candidates;
  for (const auto& s : family.per_lambda) {
    if (std::find(candidates.begin(), candidates.end(), s) == candidates.end()) {
      candidates.push_back(s);
    }
  }
  const bool all_empty = std::all_of(candidates.begin(), candidates.end(),
                                     [](const Support& s) { return s.empty(); });

  std::vector<BootstrapChoice> choices(static_cast<std::size_t>(config.b2));
  parallel_for(config.b2, config.workers, [&](int k) {
    const SeedSpec boot_seed = derive_stream(config.seed, kEstimationSlot + static_cast<std::uint64_t>(k));
    const ResamplePlan plan = bootstrap_indices(n, boot_seed);
    const std::vector<int> oob = out_of_bag(plan.indices(), n);
    const DataSet train = take_rows(data, plan.indices());
    BootstrapChoice& choice = choices[static_cast<std::size_t>(k)];
    DataSet eval;
    if (oob.empty()) {
      choice.oob_empty = true;  // fall back to scoring on the full data
      eval = data;
    } else {
      eval = take_rows(data, oob);
    }
    bool have_best = false;
    for (const auto& support : candidates) {
      CoefficientVector coef = refit_on_support(train, support, task, config.solver);
      const double loss = held_out_loss(eval, coef, task);
      if (!have_best || loss < choice.loss) {
        have_best = true;
        choice.loss = loss;
        choice.coef = std::move(coef);
        choice.support = support;
      }
    }
  });

  ModelEstimate estimate;
  estimate.coefficients.values = Vector::Zero(p);
  estimate.coefficients.intercept = 0.0;
  estimate.degenerate = all_empty;
  estimate.warnings = family.warnings;
  for (const auto& choice : choices) {
    estimate.coefficients.values += choice.coef.values;
    estimate.coefficients.intercept += choice.coef.intercept;
    estimate.per_bootstrap_supports.push_back(choice.support);
    estimate.per_bootstrap_losses.push_back(choice.loss);
  }
  for (int k = 0; k < config.b2; ++k) {
    if (choices[static_cast<std::size_t>(k)].oob_empty) {
      estimate.warnings.push_back(
          {k, -1, "estimation bootstrap had no out-of-bag rows; scored on full data"});
    }
  }
  estimate.coefficients.values /= static_cast<double>(config.b2);
  estimate.coefficients.intercept /= static_cast<double>(config.b2);
  estimate.support = support_of(estimate.coefficients.values);
  return estimate;
}

ModelEstimate run_uoi(const DataSet& data, const UoIConfig& config, Task task) {
  data.validate();
  config.validate();
  if (task == Task::classification && !data.has_binary_response()) {
    throw std::invalid_argument("run_uoi: classification requires a {0,1} response");
  }
  if (task == Task::classification &&
      config.selection_variant == SelectionVariant::stability) {
    throw std::invalid_argument(
        "run_uoi: the stability selection variant is regression-only");
  }

  // Solvers run on unit-sum-of-squares columns; outputs are mapped back.
  DataSet work = data;
  Vector scale = Vector::Ones(data.n_features());
  if (!data.column_standardized) {
    for (Eigen::Index j = 0; j < work.features.cols(); ++j) {
      const double norm = work.features.col(j).norm();
      if (norm > 0.0) {
        scale(j) = norm;
        work.features.col(j) /= norm;
      }
    }
    work.column_standardized = true;
  }

  UoIConfig selection_config = config;
  if (config.grid.values.empty()) {
    selection_config.grid = make_lambda_grid(work, config.grid_size, config.grid_ratio, task);
  }

  const SupportFamily family =
      config.selection_variant == SelectionVariant::bolasso
          ? select_bolasso_impl(work, selection_config, task)
          : select_stability(work, selection_config);
  ModelEstimate estimate = estimate_union(work, family, selection_config, task);
  estimate.coefficients.values.array() /= scale.array();
  return estimate;
}

}  // namespace uoi
