#pragma once

#include "uoi/random.hpp"
#include "uoi/types.hpp"

#include <optional>
#include <vector>

namespace uoi {

struct TargetMatrix {
  Matrix entries;        // m x n
  bool encoded = false;  // entries restricted to {-1, 0, 1}

  void validate() const;
};

struct LeverageProfile {
  Vector scores;  // length n, sums to 1
  int rank = 0;
};

struct ColumnSubset {
  std::vector<int> indices;  // sorted unique, in [0, n)
  int target_count = 0;      // requested c
};

struct ReconstructionError {
  double frobenius = 0.0;
  // Entrywise mismatch ratio after rounding the projection to {-1, 0, 1};
  // present only for encoded matrices.
  std::optional<double> nnz_ratio;
};

struct UoiCurResult {
  ColumnSubset subset;                 // union over ranks
  std::vector<ColumnSubset> per_rank;  // intersected subset per rank
  bool degenerate = false;             // final union came out empty
};

/// scores[i] = ||V_k(i,:)||^2 / k from the top-k right singular vectors.
LeverageProfile leverage_scores(const TargetMatrix& a, int k);

/// c distinct columns drawn without replacement with probability
/// proportional to the rank-k leverage scores.
ColumnSubset sample_columns_basic(const TargetMatrix& a, int k, int c,
                                  const SeedSpec& seed);

/// Sequentially adds the column whose inclusion most reduces the Frobenius
/// reconstruction error (ties -> lowest index).
ColumnSubset greedy_cur(const TargetMatrix& a, int c);

/// Per rank: intersect leverage-sampled subsets over b1 row bootstraps;
/// final subset is the union of the per-rank intersections.
UoiCurResult uoi_cur_select(const TargetMatrix& a,
                            const std::vector<int>& ranks, int c_per_rank,
                            int b1, const SeedSpec& seed);

/// Frobenius error ||A - C C^+ A||_F, plus the rounded-entry mismatch ratio
/// for encoded matrices. Requires a non-empty subset.
ReconstructionError reconstruction_error(const TargetMatrix& a,
                                         const ColumnSubset& subset);

}  // namespace uoi
