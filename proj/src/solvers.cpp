#include "uoi/solvers.hpp"

#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace uoi {

namespace {

inline double soft_threshold(double z, double t) {
  if (z > t) return z - t;
  if (z < -t) return z + t;
  return 0.0;
}

// Max stationarity violation of ||yc - Xc b||^2 + sum_j lam_j |b_j| at b.
double kkt_violation_centered(const Matrix& xc, const Vector& residual,
                              const Vector& beta, const Vector& lam) {
  double worst = 0.0;
  for (Eigen::Index j = 0; j < xc.cols(); ++j) {
    const double g = 2.0 * xc.col(j).dot(residual);
    double v;
    if (beta(j) != 0.0) {
      v = std::abs(g - lam(j) * (beta(j) > 0.0 ? 1.0 : -1.0));
    } else {
      v = std::max(0.0, std::abs(g) - lam(j));
    }
    worst = std::max(worst, v);
  }
  return worst;
}

FitResult lasso_coordinate_descent(const DataSet& data, const Vector& lam,
                                   const SolverOptions& opts) {
  data.validate();
  const Eigen::Index p = data.n_features();

  // Eliminating the unpenalized intercept: solve on centered data, recover
  // the intercept from the column means afterwards.
  const Vector col_mean = data.features.colwise().mean();
  Matrix xc = data.features.rowwise() - col_mean.transpose();
  const double y_mean = data.response.mean();
  const Vector yc = data.response.array() - y_mean;
  const Vector col_sq = xc.colwise().squaredNorm();

  Vector beta = Vector::Zero(p);
  Vector residual = yc;

  bool converged = false;
  int sweeps = 0;
  double gap = 0.0;
  for (; sweeps < opts.max_iter; ) {
    double max_delta = 0.0;
    for (Eigen::Index j = 0; j < p; ++j) {
      if (col_sq(j) <= 0.0) continue;
      const double z = xc.col(j).dot(residual) + col_sq(j) * beta(j);
      const double next = soft_threshold(z, lam(j) / 2.0) / col_sq(j);
      const double delta = next - beta(j);
      if (delta != 0.0) {
        residual -= delta * xc.col(j);
        beta(j) = next;
        max_delta = std::max(max_delta, std::abs(delta));
      }
    }
    ++sweeps;
    if (max_delta <= opts.tol) {
      residual = yc - xc * beta;  // refresh before the optimality check
      gap = kkt_violation_centered(xc, residual, beta, lam);
      if (gap <= opts.tol) {
        converged = true;
        break;
      }
    } else if (sweeps % 64 == 0) {
      residual = yc - xc * beta;  // cap accumulated update error
    }
  }
  if (!converged) {
    residual = yc - xc * beta;
    gap = kkt_violation_centered(xc, residual, beta, lam);
  }

  FitResult result;
  result.coef.values = std::move(beta);
  result.coef.intercept = y_mean - col_mean.dot(result.coef.values);
  result.converged = converged;
  result.iterations = sweeps;
  result.optimality_gap = gap;
  return result;
}

}  // namespace

FitResult fit_lasso(const DataSet& data, double lambda,
                    const SolverOptions& opts) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw std::invalid_argument("fit_lasso: lambda must be positive");
  }
  return lasso_coordinate_descent(
      data, Vector::Constant(data.n_features(), lambda), opts);
}

FitResult fit_lasso_weighted(const DataSet& data,
                             const Vector& lambda_per_feature,
                             const SolverOptions& opts) {
  if (lambda_per_feature.size() != data.n_features()) {
    throw std::invalid_argument("fit_lasso_weighted: penalty length mismatch");
  }
  if (lambda_per_feature.minCoeff() < 0.0 || !(lambda_per_feature.maxCoeff() > 0.0)) {
    throw std::invalid_argument(
        "fit_lasso_weighted: penalties must be nonnegative with a positive maximum");
  }
  return lasso_coordinate_descent(data, lambda_per_feature, opts);
}

CoefficientVector fit_ols(const DataSet& data, const Support& support,
                          bool fit_intercept) {
  data.validate();
  const Eigen::Index p = data.n_features();
  for (int j : support) {
    if (j < 0 || j >= p) {
      throw std::invalid_argument("fit_ols: support index " + std::to_string(j) +
                                  " out of range for p=" + std::to_string(p));
    }
  }

  CoefficientVector coef;
  coef.values = Vector::Zero(p);
  if (support.empty()) {
    coef.intercept = fit_intercept ? data.response.mean() : 0.0;
    return coef;
  }

  Matrix xs(data.n_samples(), static_cast<Eigen::Index>(support.size()));
  for (std::size_t c = 0; c < support.size(); ++c) {
    xs.col(static_cast<Eigen::Index>(c)) = data.features.col(support[c]);
  }

  Vector restricted;
  double intercept = 0.0;
  if (fit_intercept) {
    const Vector xs_mean = xs.colwise().mean();
    const double y_mean = data.response.mean();
    const Matrix xc = xs.rowwise() - xs_mean.transpose();
    const Vector yc = data.response.array() - y_mean;
    restricted = xc.completeOrthogonalDecomposition().solve(yc);
    intercept = y_mean - xs_mean.dot(restricted);
  } else {
    restricted = xs.completeOrthogonalDecomposition().solve(data.response);
  }
  for (std::size_t c = 0; c < support.size(); ++c) {
    coef.values(support[c]) = restricted(static_cast<Eigen::Index>(c));
  }
  coef.intercept = intercept;
  return coef;
}

namespace {

inline double softplus(double z) {
  return z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
}

double nll_from_logits(const Vector& z, const Vector& y) {
  double total = 0.0;
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    total += softplus(z(i)) - y(i) * z(i);
  }
  return total;
}

}  // namespace

double logistic_nll(const Matrix& features, const Vector& response,
                    const CoefficientVector& coef) {
  const Vector z = (features * coef.values).array() + coef.intercept;
  return nll_from_logits(z, response);
}

FitResult fit_logistic_l1(const DataSet& data, double lambda,
                          const SolverOptions& opts) {
  data.validate();
  if (lambda < 0.0 || !std::isfinite(lambda)) {
    throw std::invalid_argument("fit_logistic_l1: lambda must be nonnegative");
  }
  if (!data.has_binary_response()) {
    throw std::invalid_argument("fit_logistic_l1: response must be in {0,1}");
  }
  const double pi = data.response.mean();
  if (pi <= 0.0 || pi >= 1.0) {
    throw std::invalid_argument("fit_logistic_l1: both classes must be present");
  }

  const Eigen::Index n = data.n_samples();
  const Eigen::Index p = data.n_features();
  const Matrix& x = data.features;
  const Vector& y = data.response;

  Vector beta = Vector::Zero(p);
  double intercept = std::log(pi / (1.0 - pi));

  Vector z = Vector::Constant(n, intercept);
  double nll = nll_from_logits(z, y);

  FitResult result;
  bool converged = false;
  int iter = 0;
  double residual_norm = 0.0;
  Vector grad(p), probs(n), beta_next(p), z_next(n);
  for (; iter < opts.max_iter; ++iter) {
    for (Eigen::Index i = 0; i < n; ++i) probs(i) = 1.0 / (1.0 + std::exp(-z(i)));
    const Vector diff = probs - y;
    grad.noalias() = x.transpose() * diff;
    const double grad_intercept = diff.sum();

    // Fixed-point residual at reference step 1: optimal iff
    // beta == prox(beta - grad) and the intercept gradient vanishes.
    residual_norm = std::abs(grad_intercept);
    for (Eigen::Index j = 0; j < p; ++j) {
      residual_norm = std::max(
          residual_norm, std::abs(beta(j) - soft_threshold(beta(j) - grad(j), lambda)));
    }
    if (residual_norm <= opts.tol) {
      converged = true;
      break;
    }

    double step = 1.0;
    bool accepted = false;
    while (step >= 1e-20) {
      for (Eigen::Index j = 0; j < p; ++j) {
        beta_next(j) = soft_threshold(beta(j) - step * grad(j), step * lambda);
      }
      const double intercept_next = intercept - step * grad_intercept;
      z_next.noalias() = x * beta_next;
      z_next.array() += intercept_next;
      const double nll_next = nll_from_logits(z_next, y);
      const Vector d = beta_next - beta;
      const double di = intercept_next - intercept;
      const double quad = nll + grad.dot(d) + grad_intercept * di +
                          (d.squaredNorm() + di * di) / (2.0 * step);
      if (nll_next <= quad + 1e-12 * std::abs(nll)) {
        beta.swap(beta_next);
        intercept = intercept_next;
        z.swap(z_next);
        nll = nll_next;
        accepted = true;
        break;
      }
      step /= 2.0;
    }
    if (!accepted) break;  // line search stalled at machine precision
  }

  result.coef.values = std::move(beta);
  result.coef.intercept = intercept;
  result.converged = converged;
  result.iterations = iter;
  result.optimality_gap = residual_norm;
  return result;
}

double lambda_max(const DataSet& data, Task task) {
  data.validate();
  if (task == Task::regression) {
    const Vector yc = data.response.array() - data.response.mean();
    return 2.0 * (data.features.transpose() * yc).cwiseAbs().maxCoeff();
  }
  if (!data.has_binary_response()) {
    throw std::invalid_argument("lambda_max: classification response must be in {0,1}");
  }
  const double pi = data.response.mean();
  if (pi <= 0.0 || pi >= 1.0) {
    throw std::invalid_argument("lambda_max: both classes must be present");
  }
  const Vector diff = Vector::Constant(data.n_samples(), pi) - data.response;
  return (data.features.transpose() * diff).cwiseAbs().maxCoeff();
}

RegularizationGrid make_lambda_grid(const DataSet& data, int q, double ratio,
                                    Task task) {
  if (q < 1) throw std::invalid_argument("make_lambda_grid: q must be >= 1");
  if (!(ratio > 0.0) || !(ratio < 1.0)) {
    throw std::invalid_argument("make_lambda_grid: ratio must be in (0,1)");
  }
  const double top = lambda_max(data, task);
  if (!(top > 0.0) || !std::isfinite(top)) {
    throw std::invalid_argument(
        "make_lambda_grid: degenerate penalty range (constant response?)");
  }
  RegularizationGrid grid;
  grid.values.resize(static_cast<std::size_t>(q));
  if (q == 1) {
    grid.values[0] = top;
    return grid;
  }
  for (int i = 0; i < q; ++i) {
    grid.values[static_cast<std::size_t>(i)] =
        top * std::pow(ratio, static_cast<double>(i) / static_cast<double>(q - 1));
  }
  grid.validate();
  return grid;
}

double lasso_kkt_violation(const DataSet& data, const CoefficientVector& coef,
                           double lambda) {
  const Vector residual = data.response - data.features * coef.values -
                          Vector::Constant(data.n_samples(), coef.intercept);
  // Stationarity in each coefficient and in the unpenalized intercept.
  double worst = std::abs(2.0 * residual.sum());
  for (Eigen::Index j = 0; j < data.n_features(); ++j) {
    const double g = 2.0 * data.features.col(j).dot(residual);
    if (coef.values(j) != 0.0) {
      worst = std::max(worst, std::abs(g - lambda * (coef.values(j) > 0.0 ? 1.0 : -1.0)));
    } else {
      worst = std::max(worst, std::max(0.0, std::abs(g) - lambda));
    }
  }
  return worst;
}

}  // namespace uoi
