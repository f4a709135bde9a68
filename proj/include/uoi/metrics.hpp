#pragma once

#include "uoi/types.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace uoi {

struct MetricReport {
  std::optional<double> selection_accuracy;
  std::optional<double> estimation_rms;
  std::optional<double> estimation_variance;
  std::optional<double> r_squared;
  std::optional<double> bic;
  std::optional<double> selection_ratio;
  std::optional<int> false_positives;
  std::optional<int> false_negatives;
};

/// 1 - |est ^ truth| / (|est| + |truth|); 1 when both supports are empty.
double selection_accuracy(const Support& true_support,
                          const Support& est_support);

/// sqrt(mean squared coefficient difference).
double estimation_rms(const Vector& true_beta, const Vector& est_beta);

/// Population variance per coordinate, averaged over coordinates.
/// Requires at least two estimates.
double estimation_variance(const std::vector<CoefficientVector>& estimates);

/// 1 - SSE / SST. Requires non-constant y.
double r_squared(const Vector& y, const Vector& y_hat);

/// n*log(SSE/(n-1)) + nonzeros*log(n), with the mean square floored at
/// 1e-12 so zero-residual fits stay finite. Requires n >= 2.
double bic_regression(const Vector& y, const Vector& y_hat, int nonzeros);

/// -2*log_likelihood + nonzeros*log(n).
double bic_classification(double log_likelihood, int n, int nonzeros);

/// Fraction of nonzero coefficients.
double selection_ratio(const Vector& est_beta);

/// (false positives, false negatives) of est_support against true_support.
std::pair<int, int> confusion_counts(const Support& true_support,
                                     const Support& est_support);

/// Spearman rank correlation with average ranks for ties; 0 when either
/// argument is constant.
double spearman_rho(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace uoi
