#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "nlc/grid.hpp"

using namespace nlc;

namespace {

constexpr double kPi = std::numbers::pi;

// Lattice points (k + 1/2) h inside the disk, counted directly.
std::size_t lattice_count(const Point& c, double r, double h) {
  std::size_t n = 0;
  const auto lo = static_cast<long>(std::floor((std::min(c[0], c[1]) - r) / h)) - 2;
  const auto hi = static_cast<long>(std::ceil((std::max(c[0], c[1]) + r) / h)) + 2;
  for (long i = lo; i <= hi; ++i) {
    for (long j = lo; j <= hi; ++j) {
      const double x = (i + 0.5) * h - c[0];
      const double y = (j + 0.5) * h - c[1];
      if (x * x + y * y < r * r) ++n;
    }
  }
  return n;
}

}  // namespace

TEST_SUITE("grid") {

TEST_CASE("disk rasterization") {
  const double h = 1.0 / 64;
  const Point c{0.3, -0.2, 0.0};
  const auto disk = from_balls({c}, 1.0, h, 2);
  CHECK(disk.occupied_count() == lattice_count(c, 1.0, h));
  CHECK(measure(disk) == doctest::Approx(kPi).epsilon(5e-3));
  CHECK(disk.has_margin(2));
  CHECK(diameter(disk) == doctest::Approx(2.0).epsilon(2 * h));
  CHECK_THROWS_AS(from_balls({c}, -1.0, h, 2), std::invalid_argument);
}

TEST_CASE("ball volumes in 1 and 3 dimensions") {
  CHECK(measure(from_balls({Point{}}, 1.0, 1.0 / 256, 1)) == doctest::Approx(2.0));
  CHECK(measure(from_balls({Point{}}, 1.0, 1.0 / 32, 3)) == doctest::Approx(4.0 * kPi / 3.0).epsilon(1e-2));
}

TEST_CASE("overlapping balls give the union") {
  const double h = 1.0 / 32;
  const auto a = from_balls({{0, 0, 0}}, 1.0, h, 2);
  const auto b = from_balls({{1, 0, 0}}, 1.0, h, 2);
  const auto both = from_balls({{0, 0, 0}, {1, 0, 0}}, 1.0, h, 2);
  CHECK(symmetric_difference_measure(both, set_union(a, b)) == 0.0);
}

TEST_CASE("index round trip") {
  const auto g = from_balls({{0.1, 0.2, 0.3}}, 0.5, 0.1, 3);
  for (std::size_t lin = 0; lin < g.cell_count(); lin += 7) {
    const CellIndex c = g.unravel(lin);
    CHECK(g.linear(c) == lin);
    CHECK(g.locate(g.center(c)) == c);
  }
}

TEST_CASE("reflection") {
  const double h = 1.0 / 64;
  SUBCASE("single cell") {
    IndicatorGrid g(2, {8, 8, 1}, {0, 0, 0}, 1.0);
    std::vector<std::uint8_t> occ(64, 0);
    occ[g.linear({5, 3, 0})] = 1;
    g = IndicatorGrid(2, {8, 8, 1}, {0, 0, 0}, 1.0, occ);
    const auto r = reflect(g, Hyperplane({1, 0, 0}, 0.0, 2));
    REQUIRE(r.occupied_count() == 1);
    const Point p = r.center(r.occupied_cells()[0]);
    CHECK(p[0] == -5.5);
    CHECK(p[1] == 3.5);
  }
  SUBCASE("disk maps to the mirrored disk") {
    const Point c{0.3, -0.2, 0.0};
    const auto disk = from_balls({c}, 1.0, h, 2);
    const Hyperplane plane({1, 1, 0}, 0.1, 2);
    const Point m = plane.mirror(c);
    const auto image = reflect(disk, plane);
    const auto expected = from_balls({m}, 1.0, h, 2);
    const double perimeter = 2 * kPi;
    CHECK(symmetric_difference_measure(image, expected) <= perimeter * 2 * h);
    // Involution up to one rasterization layer.
    const auto back = reflect(image, plane);
    CHECK(symmetric_difference_measure(back, disk) <= boundary_cells(disk).size() * h * h);
  }
}

TEST_CASE("half spaces partition the set") {
  const double h = 1.0 / 64;
  const auto disk = from_balls({Point{}}, 1.0, h, 2);
  const Hyperplane plane({0.6, 0.8, 0}, 0.0, 2);
  const auto minus = clip_halfspace(disk, plane, Side::minus);
  const auto plus = clip_halfspace(disk, plane, Side::plus);
  CHECK(measure(minus) + measure(plus) == measure(disk));
  CHECK(symmetric_difference_measure(set_union(minus, plus), disk) == 0.0);
  CHECK(measure(minus) == doctest::Approx(kPi / 2).epsilon(1e-2));
  // Centres on the plane go to the minus side.
  const auto on_axis = clip_halfspace(disk, Hyperplane({1, 0, 0}, 0.5 * h, 2), Side::plus);
  for (std::size_t lin : on_axis.occupied_cells()) CHECK(on_axis.center(lin)[0] > 0.5 * h);
  CHECK(clip_halfspace(disk, Hyperplane({1, 0, 0}, 5.0, 2), Side::minus) == disk);
  CHECK(clip_halfspace(disk, Hyperplane({1, 0, 0}, 5.0, 2), Side::plus).empty());
}

TEST_CASE("essential boundary of a disk") {
  const double h = 1.0 / 64;
  const auto disk = from_balls({Point{}}, 1.0, h, 2);
  const auto b = essential_boundary(disk);
  REQUIRE(!b.empty());
  for (std::size_t i = 0; i < b.size(); ++i) {
    CHECK(std::abs(std::hypot(b.points[i][0], b.points[i][1]) - 1.0) <= 2 * h);
    CHECK(b.occupied_fraction[i] > 0.0);
    CHECK(b.occupied_fraction[i] < 1.0);
  }
  CHECK_THROWS_AS(essential_boundary(IndicatorGrid(2, {4, 4, 1}, {0, 0, 0}, 1.0)), std::invalid_argument);
}

TEST_CASE("components") {
  const double h = 1.0 / 32;
  const auto two = from_balls({{-2, 0, 0}, {2, 0, 0}}, 1.0, h, 2);
  const auto comps = connected_components(two);
  REQUIRE(comps.count() == 2);
  CHECK(comps.cells[0].size() + comps.cells[1].size() == two.occupied_count());
  // Diagonal neighbours are connected.
  std::vector<std::uint8_t> occ(16, 0);
  occ[0] = occ[5] = 1;
  CHECK(connected_components(IndicatorGrid(2, {4, 4, 1}, {0, 0, 0}, 1.0, occ)).count() == 1);
  // Measure is additive over disjoint pieces.
  double total = 0.0;
  for (const auto& cells : comps.cells) total += measure(grid_from_cells(two, cells));
  CHECK(total == measure(two));
}

TEST_CASE("steiner symmetry") {
  const double h = 1.0 / 64;
  const auto disk = from_balls({Point{}}, 1.0, h, 2);
  CHECK(steiner_symmetric_about(disk, Hyperplane({1, 0, 0}, 0.0, 2), 2 * h));
  CHECK(steiner_symmetric_about(disk, Hyperplane({0.6, 0.8, 0}, 0.0, 2), 2 * h));
  CHECK_FALSE(steiner_symmetric_about(disk, Hyperplane({1, 0, 0}, 0.3, 2), 2 * h));
  // Mirror-symmetric pair with H through both centres: every section is one centred interval.
  const auto pair = from_balls({{0, -2, 0}, {0, 2, 0}}, 1.0, h, 2);
  CHECK(steiner_symmetric_about(pair, Hyperplane({1, 0, 0}, 0.0, 2), 2 * h));
  // Mirror images across H: sections are two intervals.
  const auto across = from_balls({{-2, 0, 0}, {2, 0, 0}}, 1.0, h, 2);
  CHECK_FALSE(steiner_symmetric_about(across, Hyperplane({1, 0, 0}, 0.0, 2), 2 * h));
}

TEST_CASE("line binning groups points on one normal line") {
  const LineBinning bins({0.6, 0.8, 0}, 0.1, 2);
  const Point p{0.3, 0.1, 0};
  const Point q{p[0] + 2.0 * 0.6, p[1] + 2.0 * 0.8, 0};
  CHECK(bins.key(p) == bins.key(q));
  const Point side{p[0] - 0.8 * 0.25, p[1] + 0.6 * 0.25, 0};
  CHECK(bins.key(p) != bins.key(side));
}

}  // TEST_SUITE
