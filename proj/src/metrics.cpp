#include "uoi/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace uoi {

double selection_accuracy(const Support& true_support,
                          const Support& est_support) {
  if (true_support.empty() && est_support.empty()) return 1.0;
  const Support common = intersect_two(true_support, est_support);
  const double sym_diff =
      static_cast<double>(true_support.size() + est_support.size() - 2 * common.size());
  return 1.0 - sym_diff / static_cast<double>(true_support.size() + est_support.size());
}

double estimation_rms(const Vector& true_beta, const Vector& est_beta) {
  if (true_beta.size() != est_beta.size()) {
    throw std::invalid_argument("estimation_rms: length mismatch");
  }
  return std::sqrt((true_beta - est_beta).squaredNorm() /
                   static_cast<double>(true_beta.size()));
}

double estimation_variance(const std::vector<CoefficientVector>& estimates) {
  if (estimates.size() < 2) {
    throw std::invalid_argument("estimation_variance: needs at least two estimates");
  }
  const Eigen::Index p = estimates.front().values.size();
  const double count = static_cast<double>(estimates.size());
  double total = 0.0;
  for (Eigen::Index j = 0; j < p; ++j) {
    double mean = 0.0, mean_sq = 0.0;
    for (const auto& est : estimates) {
      if (est.values.size() != p) {
        throw std::invalid_argument("estimation_variance: length mismatch");
      }
      mean += est.values(j);
      mean_sq += est.values(j) * est.values(j);
    }
    mean /= count;
    mean_sq /= count;
    total += std::max(0.0, mean_sq - mean * mean);
  }
  return p > 0 ? total / static_cast<double>(p) : 0.0;
}

double r_squared(const Vector& y, const Vector& y_hat) {
  if (y.size() != y_hat.size()) {
    throw std::invalid_argument("r_squared: length mismatch");
  }
  const double mean = y.mean();
  const double sst = (y.array() - mean).square().sum();
  if (!(sst > 0.0)) {
    throw std::invalid_argument("r_squared: response is constant");
  }
  return 1.0 - (y - y_hat).squaredNorm() / sst;
}

double bic_regression(const Vector& y, const Vector& y_hat, int nonzeros) {
  const Eigen::Index n = y.size();
  if (n < 2) throw std::invalid_argument("bic_regression: needs n >= 2");
  if (y_hat.size() != n) throw std::invalid_argument("bic_regression: length mismatch");
  const double mean_sq =
      std::max((y - y_hat).squaredNorm() / static_cast<double>(n - 1), 1e-12);
  return static_cast<double>(n) * std::log(mean_sq) +
         static_cast<double>(nonzeros) * std::log(static_cast<double>(n));
}

double bic_classification(double log_likelihood, int n, int nonzeros) {
  if (n < 1) throw std::invalid_argument("bic_classification: needs n >= 1");
  return -2.0 * log_likelihood +
         static_cast<double>(nonzeros) * std::log(static_cast<double>(n));
}

double selection_ratio(const Vector& est_beta) {
  if (est_beta.size() == 0) return 0.0;
  int nonzeros = 0;
  for (Eigen::Index j = 0; j < est_beta.size(); ++j) {
    if (est_beta(j) != 0.0) ++nonzeros;
  }
  return static_cast<double>(nonzeros) / static_cast<double>(est_beta.size());
}

std::pair<int, int> confusion_counts(const Support& true_support,
                                     const Support& est_support) {
  const Support common = intersect_two(true_support, est_support);
  const int fp = static_cast<int>(est_support.size() - common.size());
  const int fn = static_cast<int>(true_support.size() - common.size());
  return {fp, fn};
}

namespace {

std::vector<double> average_ranks(const std::vector<double>& v) {
  const std::size_t n = v.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && v[order[j + 1]] == v[order[i]]) ++j;
    const double shared = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t t = i; t <= j; ++t) ranks[order[t]] = shared;
    i = j + 1;
  }
  return ranks;
}

}  // namespace

double spearman_rho(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("spearman_rho: needs two same-length vectors");
  }
  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += rx[i];
    my += ry[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (sxx <= 0.0 || syy <= 0.0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace uoi
