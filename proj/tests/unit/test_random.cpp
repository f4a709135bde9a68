#include "doctest.h"

#include "uoi/random.hpp"

#include <set>
#include <vector>

using namespace uoi;

TEST_CASE("identical seeds reproduce the stream exactly") {
  RngStream a(SeedSpec{42, 7});
  RngStream b(SeedSpec{42, 7});
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("distinct stream ids give different streams") {
  int collisions = 0;
  for (std::uint64_t pair = 0; pair < 100; ++pair) {
    RngStream a(SeedSpec{9, 2 * pair});
    RngStream b(SeedSpec{9, 2 * pair + 1});
    if (a.next_u64() == b.next_u64()) ++collisions;
  }
  CHECK(collisions == 0);
}

TEST_CASE("uniform_below stays in range and covers small supports") {
  RngStream rng(SeedSpec{1, 0});
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 200; ++i) {
    const std::uint64_t v = rng.uniform_below(5);
    CHECK(v < 5);
    seen.insert(v);
  }
  CHECK(seen.size() == 5);
}

TEST_CASE("uniform01 lands in [0,1) with sane mean") {
  RngStream rng(SeedSpec{3, 0});
  double total = 0.0;
  for (int i = 0; i < 20000; ++i) {
    const double u = rng.uniform01();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    total += u;
  }
  CHECK(total / 20000.0 == doctest::Approx(0.5).epsilon(0.02));
}

TEST_CASE("normal has roughly unit variance") {
  RngStream rng(SeedSpec{4, 0});
  double mean = 0.0, sq = 0.0;
  const int draws = 50000;
  for (int i = 0; i < draws; ++i) {
    const double z = rng.normal();
    mean += z;
    sq += z * z;
  }
  mean /= draws;
  sq /= draws;
  CHECK(mean == doctest::Approx(0.0).epsilon(1.0).scale(0.05));
  CHECK(sq - mean * mean == doctest::Approx(1.0).epsilon(0.03));
}

TEST_CASE("derive_stream children differ from each other and the parent") {
  const SeedSpec parent{100, 0};
  RngStream p(parent);
  std::set<std::uint64_t> firsts{p.next_u64()};
  for (std::uint64_t slot = 0; slot < 50; ++slot) {
    RngStream child(derive_stream(parent, slot));
    CHECK(firsts.insert(child.next_u64()).second);
  }
}
