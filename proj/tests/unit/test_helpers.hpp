#pragma once

#include "uoi/random.hpp"
#include "uoi/types.hpp"

namespace uoi::testing {

inline Matrix random_matrix(Eigen::Index rows, Eigen::Index cols,
                            std::uint64_t seed) {
  RngStream rng(SeedSpec{seed, 0});
  Matrix m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = rng.normal();
  }
  return m;
}

inline Vector random_vector(Eigen::Index size, std::uint64_t seed) {
  RngStream rng(SeedSpec{seed, 1});
  Vector v(size);
  for (Eigen::Index i = 0; i < size; ++i) v(i) = rng.normal();
  return v;
}

inline DataSet random_regression(Eigen::Index n, Eigen::Index p,
                                 std::uint64_t seed) {
  DataSet data;
  data.features = random_matrix(n, p, seed);
  data.response = random_vector(n, seed ^ 0x517CC1B727220A95ULL);
  return data;
}

}  // namespace uoi::testing
