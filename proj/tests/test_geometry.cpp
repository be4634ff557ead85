#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "wegnerlab/errors.hpp"
#include "wegnerlab/geometry.hpp"
#include "wegnerlab/rng.hpp"

using namespace wegnerlab;

TEST_CASE("enumerate_box fixed order") {
  CHECK(enumerate_box({1, 0}) == std::vector<LatticePoint>{{0}});
  CHECK(enumerate_box({1, 1}) == std::vector<LatticePoint>{{-1}, {0}, {1}});

  const auto points = enumerate_box({2, 1});
  REQUIRE(points.size() == 9);
  CHECK(points.front() == LatticePoint{-1, -1});
  CHECK(points.back() == LatticePoint{1, 1});
  // Lexicographic: second point increments the last coordinate.
  CHECK(points[1] == LatticePoint{-1, 0});
}

TEST_CASE("box volume and index round trip") {
  Xoshiro256PlusPlus rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const int d = 1 + static_cast<int>(rng.uniform() * 3);
    const int s = static_cast<int>(rng.uniform() * 4);
    Box box(BoxSpec{d, s});
    std::int64_t expected = 1;
    for (int i = 0; i < d; ++i) expected *= 2 * s + 1;
    REQUIRE(box.size() == expected);
    for (std::int64_t i = 0; i < box.size(); ++i)
      CHECK(box.index_of(box.point_at(i)) == i);
  }
}

TEST_CASE("box rejects bad input") {
  CHECK_THROWS_AS(Box(BoxSpec{0, 1}), InvalidGeometry);
  CHECK_THROWS_AS(Box(BoxSpec{1, -1}), InvalidGeometry);
  Box box(BoxSpec{2, 1});
  CHECK_THROWS_AS(box.index_of({5, 0}), InvalidGeometry);
  CHECK_THROWS_AS(box.point_at(9), InvalidGeometry);
}

TEST_CASE("projection examples") {
  const TorusProjection pi{1, 3};
  CHECK(pi.project({10}) == LatticePoint{3});
  CHECK(pi.project({4}) == LatticePoint{-3});
  CHECK(pi.project({0}) == LatticePoint{0});
}

TEST_CASE("projection is idempotent and lands in the sub-lattice") {
  Xoshiro256PlusPlus rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const int d = 1 + static_cast<int>(rng.uniform() * 3);
    const int s = static_cast<int>(rng.uniform() * 5);
    const TorusProjection pi{d, s};
    LatticePoint m(d);
    for (int i = 0; i < d; ++i)
      m[i] = static_cast<int>(rng.uniform() * 200) - 100;
    const LatticePoint p = pi.project(m);
    CHECK(max_norm(p) <= s);
    CHECK(pi.project(p) == p);
    for (int i = 0; i < d; ++i) CHECK((p[i] - m[i]) % pi.period() == 0);
    // Interior identity.
    if (max_norm(m) <= s) CHECK(p == m);
  }
}

TEST_CASE("offsets_in_sublattice examples") {
  CHECK(offsets_in_sublattice({1, 3}, {1}, 8) ==
        std::vector<LatticePoint>{{-6}, {1}, {8}});
  CHECK(offsets_in_sublattice({1, 3}, {0}, 6) ==
        std::vector<LatticePoint>{{0}});

  const auto grid = offsets_in_sublattice({2, 1}, {0, 0}, 3);
  REQUIRE(grid.size() == 9);
  for (const auto& p : grid) {
    CHECK(max_norm(p) <= 3);
    CHECK(p[0] % 3 == 0);
    CHECK(p[1] % 3 == 0);
  }
}

TEST_CASE("offsets_in_sublattice covers the coset") {
  Xoshiro256PlusPlus rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const int s = static_cast<int>(rng.uniform() * 4);
    const TorusProjection pi{1, s};
    const int m = static_cast<int>(rng.uniform() * 40) - 20;
    const int radius = static_cast<int>(rng.uniform() * 30);
    const auto pts = offsets_in_sublattice(pi, {m}, radius);
    // Brute force reference.
    std::vector<LatticePoint> expect;
    for (int x = -radius; x <= radius; ++x)
      if ((x - m) % pi.period() == 0) expect.push_back({x});
    CHECK(pts == expect);
  }
}
