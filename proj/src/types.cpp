#include "uoi/types.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace uoi {

void DataSet::validate() const {
  if (features.rows() != response.size()) {
    throw std::invalid_argument("DataSet: features row count (" +
                                std::to_string(features.rows()) +
                                ") != response length (" +
                                std::to_string(response.size()) + ")");
  }
  if (!features.allFinite() || !response.allFinite()) {
    throw std::invalid_argument("DataSet: NaN/Inf entries are not accepted");
  }
  if (column_standardized) {
    for (Eigen::Index j = 0; j < features.cols(); ++j) {
      const double ss = features.col(j).squaredNorm();
      if (std::abs(ss - 1.0) > 1e-8) {
        throw std::invalid_argument(
            "DataSet: column " + std::to_string(j) +
            " marked standardized but has sum of squares " +
            std::to_string(ss));
      }
    }
  }
}

bool DataSet::has_binary_response() const {
  for (Eigen::Index i = 0; i < response.size(); ++i) {
    const double v = response(i);
    if (v != 0.0 && v != 1.0) return false;
  }
  return true;
}

std::vector<int> CoefficientVector::nonzero_indices() const {
  std::vector<int> out;
  for (Eigen::Index j = 0; j < values.size(); ++j) {
    if (values(j) != 0.0) out.push_back(static_cast<int>(j));
  }
  return out;
}

void RegularizationGrid::validate() const {
  if (values.empty()) {
    throw std::invalid_argument("RegularizationGrid: needs at least one value");
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] > 0.0) || !std::isfinite(values[i])) {
      throw std::invalid_argument("RegularizationGrid: values must be positive and finite");
    }
    if (i > 0 && !(values[i] < values[i - 1])) {
      throw std::invalid_argument("RegularizationGrid: values must be strictly decreasing");
    }
  }
}

Support support_of(const Vector& values) {
  Support out;
  for (Eigen::Index j = 0; j < values.size(); ++j) {
    if (values(j) != 0.0) out.push_back(static_cast<int>(j));
  }
  return out;
}

Support intersect_two(const Support& a, const Support& b) {
  Support out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(out));
  return out;
}

Support union_two(const Support& a, const Support& b) {
  Support out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(),
                 std::back_inserter(out));
  return out;
}

}  // namespace uoi
