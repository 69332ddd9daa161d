#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "nlc/simd/kernels.hpp"

using namespace nlc;
using namespace nlc::simd;

namespace {

struct Cloud {
  std::vector<double> x, y, z;
  int dim;

  CloudView view() const {
    return {x.data(), dim > 1 ? y.data() : nullptr, dim > 2 ? z.data() : nullptr, x.size(), dim};
  }
};

// Lattice-like centres: many exact ties with the query points and radii.
Cloud make_cloud(std::size_t n, int dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> cell(-40, 40);
  Cloud c{{}, {}, {}, dim};
  for (std::size_t i = 0; i < n; ++i) {
    c.x.push_back((cell(rng) + 0.5) / 16.0);
    c.y.push_back((cell(rng) + 0.5) / 16.0);
    c.z.push_back((cell(rng) + 0.5) / 16.0);
  }
  return c;
}

bool close(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)}); }

}  // namespace

TEST_SUITE("simd") {

TEST_CASE("scalar is always available") {
  CHECK(isa_available(Isa::scalar));
  CHECK(&table_for(Isa::scalar) == &scalar_table());
}

TEST_CASE("isa switch") {
  const Isa before = active_isa();
  set_active_isa(Isa::scalar);
  CHECK(active_isa() == Isa::scalar);
  if (!isa_available(Isa::avx2)) CHECK_THROWS_AS(set_active_isa(Isa::avx2), std::invalid_argument);
  set_active_isa(before);
}

TEST_CASE("avx2 kernels match the scalar reference") {
  if (!isa_available(Isa::avx2)) {
    MESSAGE("avx2 not available; equivalence not exercised");
    return;
  }
  const KernelTable& s = table_for(Isa::scalar);
  const KernelTable& v = table_for(Isa::avx2);
  const std::vector<double> radii_sq{1.0 / 64, 0.25, 1.0, 2.25};
  const std::vector<double> values{4.0, 3.0, 1.5, 0.25};
  const PiecewiseView profile{radii_sq, values};
  for (int dim = 1; dim <= 3; ++dim) {
    for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 17u, 1000u, 1003u}) {
      const Cloud cloud = make_cloud(n, dim, 100 * dim + n);
      const CloudView view = cloud.view();
      // Query points on and off the lattice.
      const std::vector<Point> points{{0.03125, 0.03125, 0.03125}, {0.1, -0.37, 0.2}, {1.0, 0.5, -0.25}};
      for (const Point& a : points) {
        for (double r_sq : {0.0, 1.0 / 256, 0.25, 1.0, 9.0}) CHECK(s.count_within(view, a, r_sq) == v.count_within(view, a, r_sq));
        CHECK(close(s.sum_piecewise(view, a, profile), v.sum_piecewise(view, a, profile)));
        for (double alpha : {0.5, 1.0, 1.5, 0.3, 2.5}) {
          if (alpha >= dim) continue;
          CHECK(close(s.sum_power(view, a, alpha, 4.0), v.sum_power(view, a, alpha, 4.0)));
          CHECK(close(s.sum_power(view, a, alpha, INFINITY), v.sum_power(view, a, alpha, INFINITY)));
        }
        for (const Point& b : points) {
          CHECK(close(s.sum_abs_diff_piecewise(view, a, b, profile), v.sum_abs_diff_piecewise(view, a, b, profile)));
          CHECK(close(s.sum_abs_diff_power(view, a, b, 0.5), v.sum_abs_diff_power(view, a, b, 0.5)));
          CHECK(close(s.sum_abs_diff_power(view, a, b, 0.7), v.sum_abs_diff_power(view, a, b, 0.7)));
        }
      }
    }
  }
}

TEST_CASE("scalar kernels agree with direct loops") {
  const Cloud cloud = make_cloud(257, 2, 5);
  const CloudView view = cloud.view();
  const Point x{0.03125, -0.09375, 0};
  double power = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < cloud.x.size(); ++i) {
    const double d = std::hypot(cloud.x[i] - x[0], cloud.y[i] - x[1]);
    if (d > 0.0 && d < 2.0) power += std::pow(d, -0.5);
    if (d < 1.0) ++count;
  }
  CHECK(scalar_table().sum_power(view, x, 0.5, 4.0) == doctest::Approx(power).epsilon(1e-12));
  CHECK(scalar_table().count_within(view, x, 1.0) == count);
}

}  // TEST_SUITE
