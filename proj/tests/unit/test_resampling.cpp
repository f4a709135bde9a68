#include "doctest.h"

#include "uoi/resampling.hpp"

#include <algorithm>
#include <cmath>
#include <set>

using namespace uoi;

TEST_CASE("bootstrap with n=1 yields the only index") {
  const auto plan = bootstrap_indices(1, SeedSpec{0, 0});
  REQUIRE(plan.indices().size() == 1);
  CHECK(plan.indices()[0] == 0);
}

TEST_CASE("bootstrap is deterministic in the seed") {
  const auto a = bootstrap_indices(50, SeedSpec{123, 4});
  const auto b = bootstrap_indices(50, SeedSpec{123, 4});
  CHECK(a.indices() == b.indices());
  const auto c = bootstrap_indices(50, SeedSpec{123, 5});
  CHECK(a.indices() != c.indices());
}

TEST_CASE("bootstrap distinct fraction approaches 1 - 1/e") {
  const int n = 10000;
  double total_fraction = 0.0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    const auto plan = bootstrap_indices(n, SeedSpec{777, s});
    std::set<int> distinct(plan.indices().begin(), plan.indices().end());
    total_fraction += static_cast<double>(distinct.size()) / n;
  }
  const double expected = 1.0 - std::exp(-1.0);
  CHECK(std::abs(total_fraction / 100.0 - expected) < 0.02);
}

TEST_CASE("split_80_10_10 produces disjoint blocks of the stated sizes") {
  SUBCASE("n=10") {
    const auto plan = split_80_10_10(10, SeedSpec{1, 0});
    CHECK(plan.train().size() == 8);
    CHECK(plan.selection().size() == 1);
    CHECK(plan.test().size() == 1);
  }
  SUBCASE("n=100") {
    const auto plan = split_80_10_10(100, SeedSpec{1, 0});
    CHECK(plan.train().size() == 80);
    CHECK(plan.selection().size() == 10);
    CHECK(plan.test().size() == 10);
    std::set<int> all;
    for (const auto& block : plan.blocks) all.insert(block.begin(), block.end());
    CHECK(all.size() == 100);
    CHECK(*all.begin() == 0);
    CHECK(*all.rbegin() == 99);
  }
  SUBCASE("rejects n < 10") {
    CHECK_THROWS_AS(split_80_10_10(9, SeedSpec{}), std::invalid_argument);
  }
  SUBCASE("reproducible") {
    const auto a = split_80_10_10(57, SeedSpec{9, 3});
    const auto b = split_80_10_10(57, SeedSpec{9, 3});
    CHECK(a.blocks == b.blocks);
  }
}

TEST_CASE("half_subsample draws floor(n/2) distinct indices") {
  SUBCASE("n=2") {
    const auto plan = half_subsample(2, SeedSpec{5, 0});
    REQUIRE(plan.indices().size() == 1);
    CHECK((plan.indices()[0] == 0 || plan.indices()[0] == 1));
  }
  SUBCASE("n=101") {
    const auto plan = half_subsample(101, SeedSpec{5, 0});
    std::set<int> distinct(plan.indices().begin(), plan.indices().end());
    CHECK(distinct.size() == 50);
    CHECK(*distinct.rbegin() < 101);
  }
}

TEST_CASE("half_subsample inclusion frequency is one half") {
  const int n = 10;
  std::vector<int> counts(n, 0);
  const int trials = 10000;
  for (std::uint64_t s = 0; s < trials; ++s) {
    const auto plan = half_subsample(n, SeedSpec{31, s});
    for (int i : plan.indices()) ++counts[static_cast<std::size_t>(i)];
  }
  for (int i = 0; i < n; ++i) {
    CHECK(std::abs(static_cast<double>(counts[static_cast<std::size_t>(i)]) / trials - 0.5) < 0.02);
  }
}

TEST_CASE("out_of_bag is the complement of the drawn rows") {
  const std::vector<int> boot{0, 0, 2, 4};
  const auto oob = out_of_bag(boot, 5);
  CHECK(oob == std::vector<int>{1, 3});
}

TEST_CASE("take_rows gathers rows with repeats") {
  DataSet data;
  data.features = Matrix::Zero(3, 2);
  data.features << 1, 2, 3, 4, 5, 6;
  data.response = Vector::Zero(3);
  data.response << 10, 20, 30;
  const DataSet picked = take_rows(data, {2, 0, 2});
  CHECK(picked.features(0, 0) == 5);
  CHECK(picked.features(1, 1) == 2);
  CHECK(picked.features(2, 0) == 5);
  CHECK(picked.response(0) == 30);
  CHECK(picked.response(1) == 10);
}
