#pragma once

#include "uoi/random.hpp"
#include "uoi/solvers.hpp"
#include "uoi/types.hpp"

#include <vector>

namespace uoi {

enum class SelectionVariant { bolasso, stability };

struct UoIConfig {
  int b1 = 20;  // selection bootstraps
  int b2 = 10;  // estimation bootstraps
  // Explicit grid wins; when empty the grid is computed from the data.
  RegularizationGrid grid;
  int grid_size = 48;
  double grid_ratio = 1e-3;
  SeedSpec seed;
  SelectionVariant selection_variant = SelectionVariant::bolasso;
  double stability_alpha = 0.5;
  double stability_pi_thr = 0.75;
  int stability_subsamples = 100;
  SolverOptions solver;
  int workers = 1;

  void validate() const;
};

struct ModelEstimate {
  CoefficientVector coefficients;  // bagged estimate, zero-filled averaging
  Support support;                 // exact nonzero set of `coefficients`
  std::vector<Support> per_bootstrap_supports;  // chosen support per estimation bootstrap
  std::vector<double> per_bootstrap_losses;     // its held-out loss
  bool degenerate = false;  // every candidate support was empty
  std::vector<CellWarning> warnings;
};

/// Set intersection of all supports. Requires a non-empty list.
Support intersect_supports(const std::vector<Support>& supports);

/// For each grid value, the intersection over b1 bootstraps of the lasso
/// support fit on that bootstrap. A cell whose solver does not converge
/// contributes the empty support and is recorded in `warnings`.
SupportFamily select_bolasso(const DataSet& data, const UoIConfig& config);

/// Stability selection: for each grid value, the features selected in at
/// least pi_thr of `stability_subsamples` half-subsamples, each fit with
/// per-feature penalties drawn uniformly from [alpha, 1] * lambda.
SupportFamily select_stability(const DataSet& data, const UoIConfig& config);

/// Union/bagging step: per estimation bootstrap, fit every candidate support
/// on the bootstrap rows, score on the out-of-bag rows, keep the argmin
/// (ties -> lowest grid index); average the winners with zero filling.
ModelEstimate estimate_union(const DataSet& data, const SupportFamily& family,
                             const UoIConfig& config,
                             Task task = Task::regression);

/// Full pipeline: selection then estimation. Columns are standardized to
/// unit sum of squares internally and coefficients are mapped back to the
/// original scale. Deterministic in (seed, config) for any worker count.
ModelEstimate run_uoi(const DataSet& data, const UoIConfig& config,
                      Task task = Task::regression);

}  // namespace uoi
