#pragma once

#include "uoi/types.hpp"

namespace uoi {

enum class Task { regression, classification };

struct SolverOptions {
  double tol = 1e-6;     // max coefficient change per sweep AND optimality residual
  int max_iter = 10000;  // sweeps (coordinate descent) or steps (proximal gradient)
};

/// Solver output. Non-convergence is not an error: `converged` is false and
/// `coef` carries the last iterate together with its optimality residual.
struct FitResult {
  CoefficientVector coef;
  bool converged = true;
  int iterations = 0;
  // Max KKT violation (lasso) or proximal fixed-point residual (logistic)
  // at the returned iterate.
  double optimality_gap = 0.0;
};

/// Lasso by cyclic coordinate descent, fixed order 0..p-1. Objective:
///   sum_i (y_i - beta'x_i - intercept)^2 + lambda * ||beta||_1
/// with an unpenalized intercept. Zeros are exact (soft-thresholding).
FitResult fit_lasso(const DataSet& data, double lambda,
                    const SolverOptions& opts = {});

/// Lasso with a per-feature penalty vector (randomized lasso for stability
/// selection). Entries must be nonnegative with a positive maximum.
FitResult fit_lasso_weighted(const DataSet& data,
                             const Vector& lambda_per_feature,
                             const SolverOptions& opts = {});

/// Least squares restricted to `support`; coefficients off the support are
/// exactly zero. Rank-deficient restrictions get the minimum-norm solution.
/// Empty support yields the intercept-only (mean) model.
CoefficientVector fit_ols(const DataSet& data, const Support& support,
                          bool fit_intercept = true);

/// L1-penalized logistic regression by proximal gradient descent with
/// backtracking line search (step starts at 1.0, halves on failure).
/// Objective: negative log-likelihood + lambda * ||beta||_1, unpenalized
/// intercept. lambda = 0 gives plain logistic regression.
FitResult fit_logistic_l1(const DataSet& data, double lambda,
                          const SolverOptions& opts = {});

/// Smallest penalty that zeroes every coefficient:
/// 2*||X'(y - mean(y))||_inf for regression, ||grad NLL||_inf at the
/// intercept-only optimum for classification.
double lambda_max(const DataSet& data, Task task);

/// q log-spaced values from lambda_max down to ratio*lambda_max.
RegularizationGrid make_lambda_grid(const DataSet& data, int q, double ratio,
                                    Task task = Task::regression);

/// Max KKT violation of the stated lasso objective at (beta, intercept).
double lasso_kkt_violation(const DataSet& data, const CoefficientVector& coef,
                           double lambda);

/// Sum over samples of log(1 + exp(z_i)) - y_i z_i, z = X beta + intercept.
double logistic_nll(const Matrix& features, const Vector& response,
                    const CoefficientVector& coef);

}  // namespace uoi
