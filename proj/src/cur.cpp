#include "uoi/cur.hpp"

#include "uoi/resampling.hpp"
#include "uoi/uoi.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace uoi {

void TargetMatrix::validate() const {
  if (entries.size() == 0) {
    throw std::invalid_argument("TargetMatrix: empty matrix");
  }
  if (!entries.allFinite()) {
    throw std::invalid_argument("TargetMatrix: NaN/Inf entries are not accepted");
  }
  if (encoded) {
    for (Eigen::Index i = 0; i < entries.rows(); ++i) {
      for (Eigen::Index j = 0; j < entries.cols(); ++j) {
        const double v = entries(i, j);
        if (v != -1.0 && v != 0.0 && v != 1.0) {
          throw std::invalid_argument(
              "TargetMatrix: encoded matrices must have entries in {-1,0,1}");
        }
      }
    }
  }
}

LeverageProfile leverage_scores(const TargetMatrix& a, int k) {
  a.validate();
  const Eigen::Index m = a.entries.rows();
  const Eigen::Index n = a.entries.cols();
  if (k < 1 || k > std::min(m, n)) {
    throw std::invalid_argument("leverage_scores: rank must be in [1, min(m,n)]");
  }
  Eigen::JacobiSVD<Matrix> svd(a.entries, Eigen::ComputeThinV);
  const Matrix& v = svd.matrixV();  // n x min(m,n)
  LeverageProfile profile;
  profile.rank = k;
  profile.scores = v.leftCols(k).rowwise().squaredNorm() / static_cast<double>(k);
  return profile;
}

ColumnSubset sample_columns_basic(const TargetMatrix& a, int k, int c,
                                  const SeedSpec& seed) {
  const Eigen::Index n = a.entries.cols();
  if (c < 1 || c > n) {
    throw std::invalid_argument("sample_columns_basic: c must be in [1, n]");
  }
  const LeverageProfile profile = leverage_scores(a, k);
  RngStream rng(seed);

  std::vector<double> weight(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) weight[static_cast<std::size_t>(i)] = profile.scores(i);
  std::vector<char> taken(static_cast<std::size_t>(n), 0);

  ColumnSubset subset;
  subset.target_count = c;
  for (int draw = 0; draw < c; ++draw) {
    double total = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (!taken[static_cast<std::size_t>(i)]) total += weight[static_cast<std::size_t>(i)];
    }
    int picked = -1;
    if (total > 1e-12) {
      const double u = rng.uniform01() * total;
      double acc = 0.0;
      for (Eigen::Index i = 0; i < n; ++i) {
        if (taken[static_cast<std::size_t>(i)]) continue;
        acc += weight[static_cast<std::size_t>(i)];
        if (u < acc) {
          picked = static_cast<int>(i);
          break;
        }
      }
      if (picked < 0) {  // u landed on the accumulated rounding edge
        for (Eigen::Index i = n - 1; i >= 0; --i) {
          if (!taken[static_cast<std::size_t>(i)]) {
            picked = static_cast<int>(i);
            break;
          }
        }
      }
    } else {
      // Remaining mass is numerically zero: fall back to a uniform draw.
      std::uint64_t remaining = 0;
      for (Eigen::Index i = 0; i < n; ++i) remaining += taken[static_cast<std::size_t>(i)] ? 0 : 1;
      std::uint64_t target = rng.uniform_below(remaining);
      for (Eigen::Index i = 0; i < n; ++i) {
        if (taken[static_cast<std::size_t>(i)]) continue;
        if (target == 0) {
          picked = static_cast<int>(i);
          break;
        }
        --target;
      }
    }
    taken[static_cast<std::size_t>(picked)] = 1;
    subset.indices.push_back(picked);
  }
  std::sort(subset.indices.begin(), subset.indices.end());
  return subset;
}

ColumnSubset greedy_cur(const TargetMatrix& a, int c) {
  a.validate();
  const Eigen::Index n = a.entries.cols();
  if (c < 1 || c > n) {
    throw std::invalid_argument("greedy_cur: c must be in [1, n]");
  }

  // Residual deflation: after picking a column, remove its (normalized)
  // direction from every column. The pick maximizing ||R' r_j||^2 / ||r_j||^2
  // is the one minimizing the resulting Frobenius error.
  Matrix residual = a.entries;
  std::vector<char> taken(static_cast<std::size_t>(n), 0);
  ColumnSubset subset;
  subset.target_count = c;
  for (int step = 0; step < c; ++step) {
    int best = -1;
    double best_gain = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (taken[static_cast<std::size_t>(j)]) continue;
      const double norm_sq = residual.col(j).squaredNorm();
      if (norm_sq <= 1e-24) continue;
      const double gain =
          (residual.transpose() * residual.col(j)).squaredNorm() / norm_sq;
      if (gain > best_gain) {
        best_gain = gain;
        best = static_cast<int>(j);
      }
    }
    if (best < 0) {
      // Residual is numerically zero; any remaining column works (lowest index).
      for (Eigen::Index j = 0; j < n; ++j) {
        if (!taken[static_cast<std::size_t>(j)]) {
          best = static_cast<int>(j);
          break;
        }
      }
    } else {
      Vector q = residual.col(best) / residual.col(best).norm();
      residual -= q * (q.transpose() * residual);
      // Second pass scrubs the round-off left by the first projection.
      residual -= q * (q.transpose() * residual);
    }
    taken[static_cast<std::size_t>(best)] = 1;
    subset.indices.push_back(best);
  }
  std::sort(subset.indices.begin(), subset.indices.end());
  return subset;
}

UoiCurResult uoi_cur_select(const TargetMatrix& a, const std::vector<int>& ranks,
                            int c_per_rank, int b1, const SeedSpec& seed) {
  a.validate();
  if (ranks.empty()) throw std::invalid_argument("uoi_cur_select: no ranks given");
  if (b1 < 1) throw std::invalid_argument("uoi_cur_select: b1 must be >= 1");
  const int m = static_cast<int>(a.entries.rows());

  UoiCurResult result;
  Support final_union;
  for (std::size_t ki = 0; ki < ranks.size(); ++ki) {
    const SeedSpec rank_seed = derive_stream(seed, 0x0400000000ULL + ki);
    std::vector<Support> per_bootstrap;
    for (int b = 0; b < b1; ++b) {
      const SeedSpec boot_seed = derive_stream(rank_seed, static_cast<std::uint64_t>(b));
      const std::vector<int> rows =
          bootstrap_indices(m, derive_stream(boot_seed, 0)).indices();
      TargetMatrix resampled;
      resampled.entries.resize(static_cast<Eigen::Index>(rows.size()), a.entries.cols());
      for (std::size_t r = 0; r < rows.size(); ++r) {
        resampled.entries.row(static_cast<Eigen::Index>(r)) = a.entries.row(rows[r]);
      }
      const ColumnSubset draw = sample_columns_basic(
          resampled, ranks[ki], c_per_rank, derive_stream(boot_seed, 1));
      per_bootstrap.push_back(draw.indices);
    }
    ColumnSubset intersected;
    intersected.target_count = c_per_rank;
    intersected.indices = intersect_supports(per_bootstrap);
    final_union = union_two(final_union, intersected.indices);
    result.per_rank.push_back(std::move(intersected));
  }
  result.subset.indices = std::move(final_union);
  result.subset.target_count = static_cast<int>(result.subset.indices.size());
  result.degenerate = result.subset.indices.empty();
  return result;
}

ReconstructionError reconstruction_error(const TargetMatrix& a,
                                         const ColumnSubset& subset) {
  a.validate();
  if (subset.indices.empty()) {
    throw std::invalid_argument("reconstruction_error: empty column subset");
  }
  const Eigen::Index n = a.entries.cols();
  Matrix c(a.entries.rows(), static_cast<Eigen::Index>(subset.indices.size()));
  for (std::size_t i = 0; i < subset.indices.size(); ++i) {
    const int j = subset.indices[i];
    if (j < 0 || j >= n) {
      throw std::invalid_argument("reconstruction_error: column index out of range");
    }
    c.col(static_cast<Eigen::Index>(i)) = a.entries.col(j);
  }
  const Matrix projected = c * c.completeOrthogonalDecomposition().solve(a.entries);

  ReconstructionError error;
  error.frobenius = (a.entries - projected).norm();
  if (a.encoded) {
    long mismatches = 0;
    long nonzeros = 0;
    for (Eigen::Index i = 0; i < a.entries.rows(); ++i) {
      for (Eigen::Index j = 0; j < a.entries.cols(); ++j) {
        const double v = projected(i, j);
        // Nearest of {-1, 0, 1}, ties toward 0.
        const double rounded = v > 0.5 ? 1.0 : (v < -0.5 ? -1.0 : 0.0);
        if (rounded != a.entries(i, j)) ++mismatches;
        if (a.entries(i, j) != 0.0) ++nonzeros;
      }
    }
    error.nnz_ratio = nonzeros > 0
                          ? static_cast<double>(mismatches) / static_cast<double>(nonzeros)
                          : (mismatches > 0 ? std::numeric_limits<double>::infinity() : 0.0);
  }
  return error;
}

}  // namespace uoi
