#include "uoi/resampling.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace uoi {

namespace {

// Seeded Fisher-Yates; the first `take` entries are a uniform sample
// without replacement.
std::vector<int> partial_shuffle(int n, int take, RngStream& rng) {
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  for (int i = 0; i < take && i < n - 1; ++i) {
    const int j = i + static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(n - i)));
    std::swap(perm[i], perm[j]);
  }
  perm.resize(take);
  return perm;
}

}  // namespace

ResamplePlan bootstrap_indices(int n, const SeedSpec& seed) {
  if (n < 1) throw std::invalid_argument("bootstrap_indices: n must be >= 1");
  RngStream rng(seed);
  std::vector<int> idx(n);
  for (int i = 0; i < n; ++i) {
    idx[i] = static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(n)));
  }
  return ResamplePlan{ResampleKind::bootstrap, {std::move(idx)}};
}

ResamplePlan split_80_10_10(int n, const SeedSpec& seed) {
  if (n < 10) throw std::invalid_argument("split_80_10_10: n must be >= 10");
  RngStream rng(seed);
  std::vector<int> perm = partial_shuffle(n, n, rng);
  const int n_train = (n * 8) / 10;
  const int n_sel = n / 10;
  std::vector<int> train(perm.begin(), perm.begin() + n_train);
  std::vector<int> sel(perm.begin() + n_train, perm.begin() + n_train + n_sel);
  std::vector<int> test(perm.begin() + n_train + n_sel, perm.end());
  std::sort(train.begin(), train.end());
  std::sort(sel.begin(), sel.end());
  std::sort(test.begin(), test.end());
  return ResamplePlan{ResampleKind::fractional_split,
                      {std::move(train), std::move(sel), std::move(test)}};
}

ResamplePlan half_subsample(int n, const SeedSpec& seed) {
  if (n < 2) throw std::invalid_argument("half_subsample: n must be >= 2");
  RngStream rng(seed);
  std::vector<int> idx = partial_shuffle(n, n / 2, rng);
  std::sort(idx.begin(), idx.end());
  return ResamplePlan{ResampleKind::half_subsample, {std::move(idx)}};
}

std::vector<int> out_of_bag(const std::vector<int>& bootstrap, int n) {
  std::vector<char> seen(n, 0);
  for (int i : bootstrap) seen[i] = 1;
  std::vector<int> out;
  for (int i = 0; i < n; ++i) {
    if (!seen[i]) out.push_back(i);
  }
  return out;
}

DataSet take_rows(const DataSet& data, const std::vector<int>& rows) {
  DataSet out;
  out.features.resize(static_cast<Eigen::Index>(rows.size()), data.features.cols());
  out.response.resize(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out.features.row(static_cast<Eigen::Index>(i)) = data.features.row(rows[i]);
    out.response(static_cast<Eigen::Index>(i)) = data.response(rows[i]);
  }
  // Resampled rows do not preserve unit column norms.
  out.column_standardized = false;
  return out;
}

}  // namespace uoi
