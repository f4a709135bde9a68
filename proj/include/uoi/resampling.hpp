#pragma once

#include "uoi/random.hpp"
#include "uoi/types.hpp"

#include <vector>

namespace uoi {

enum class ResampleKind { bootstrap, half_subsample, fractional_split };

struct ResamplePlan {
  ResampleKind kind = ResampleKind::bootstrap;
  // One block for bootstrap/half-subsample; train/selection/test for splits.
  std::vector<std::vector<int>> blocks;

  const std::vector<int>& indices() const { return blocks.at(0); }
  const std::vector<int>& train() const { return blocks.at(0); }
  const std::vector<int>& selection() const { return blocks.at(1); }
  const std::vector<int>& test() const { return blocks.at(2); }
};

/// n indices drawn i.i.d. uniform from [0, n), with replacement.
ResamplePlan bootstrap_indices(int n, const SeedSpec& seed);

/// Disjoint blocks of sizes floor(0.8n) / floor(0.1n) / remainder from a
/// seeded permutation; blocks are sorted ascending. Requires n >= 10.
ResamplePlan split_80_10_10(int n, const SeedSpec& seed);

/// floor(n/2) distinct indices, sorted ascending. Requires n >= 2.
ResamplePlan half_subsample(int n, const SeedSpec& seed);

/// Rows of [0, n) absent from `bootstrap` (its out-of-bag complement).
std::vector<int> out_of_bag(const std::vector<int>& bootstrap, int n);

/// Gathers the given rows of a data set (repeats allowed).
DataSet take_rows(const DataSet& data, const std::vector<int>& rows);

}  // namespace uoi
