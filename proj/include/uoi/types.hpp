#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace uoi {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Regression/classification sample container: design matrix plus response.
struct DataSet {
  Matrix features;   // n rows (samples) x p columns (predictors)
  Vector response;   // length n; binary {0,1} for classification
  bool column_standardized = false;

  Eigen::Index n_samples() const { return features.rows(); }
  Eigen::Index n_features() const { return features.cols(); }

  /// Throws std::invalid_argument on shape mismatch, non-finite entries,
  /// or a column_standardized flag the columns do not satisfy.
  void validate() const;

  bool has_binary_response() const;
};

struct CoefficientVector {
  Vector values;          // length p
  double intercept = 0.0;

  std::vector<int> nonzero_indices() const;
};

/// Strictly decreasing positive penalty values.
struct RegularizationGrid {
  std::vector<double> values;

  std::size_t size() const { return values.size(); }
  void validate() const;
};

/// Sorted unique feature indices in [0, p).
using Support = std::vector<int>;

Support support_of(const Vector& values);
Support intersect_two(const Support& a, const Support& b);
Support union_two(const Support& a, const Support& b);

/// A solver cell that did not converge (or otherwise failed) inside a
/// resampled sweep; the cell contributes an empty support.
struct CellWarning {
  int resample_index = 0;
  int lambda_index = 0;
  std::string message;
};

/// One support per regularization value.
struct SupportFamily {
  std::vector<Support> per_lambda;
  std::vector<CellWarning> warnings;
};

}  // namespace uoi
