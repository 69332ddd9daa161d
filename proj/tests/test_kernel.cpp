#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "nlc/kernel.hpp"

using nlc::RadialKernel;

namespace {

RadialKernel three_step() { return RadialKernel::step({3, 2, 1}, {1, 2, 3}, 2); }

// sup{s >= 0 : r(s) > lambda} by bisection on the monotone distribution function.
double bisect_s_of_lambda(const RadialKernel& k, double lambda, double hi) {
  double lo = 0.0;
  if (!(k.distribution(0.0) > lambda)) return 0.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (k.distribution(mid) > lambda ? lo : hi) = mid;
  }
  return lo;
}

}  // namespace

TEST_SUITE("kernel") {

TEST_CASE("step kernel parameters are exact") {
  const auto k = three_step();
  CHECK(k.plateau_eta() == 1.0);
  CHECK(k.support_radius() == 3.0);
  CHECK(k.sigma_level(2.5) == 1.0);
  CHECK(k.distribution(k.sigma_level(2.5)) == 2.0);
  CHECK(k.sigma_level(3.0) == 0.0);
  CHECK(k.sigma_level(7.0) == 0.0);
  CHECK(k.ess_sup() == 3.0);
}

TEST_CASE("distribution of a step kernel") {
  const auto k = three_step();
  CHECK(k.distribution(0.0) == 3.0);
  CHECK(k.distribution(0.5) == 3.0);
  CHECK(k.distribution(1.0) == 2.0);
  CHECK(k.distribution(2.5) == 1.0);
  CHECK(k.distribution(3.0) == 0.0);
  // Jumps equal the length of each level set.
  for (double level : {3.0, 2.0, 1.0}) CHECK(k.distribution_left(level) - k.distribution(level) == 1.0);
  CHECK_THROWS_AS(k.distribution(-1.0), std::domain_error);
}

TEST_CASE("distribution is non-increasing") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 4.0);
  for (const auto& k : {three_step(), RadialKernel::power(0.7, 2), RadialKernel::indicator(0.8, 3)}) {
    for (int i = 0; i < 200; ++i) {
      double a = u(rng);
      double b = u(rng);
      if (a > b) std::swap(a, b);
      CHECK(k.distribution(a) >= k.distribution(b));
    }
  }
}

TEST_CASE("s_of_lambda matches bisection") {
  const auto k = three_step();
  CHECK(k.s_of_lambda(2.5) == doctest::Approx(bisect_s_of_lambda(k, 2.5, 3.0)).epsilon(1e-12));
  CHECK(k.s_of_lambda(2.5) == 1.0);
  CHECK(k.s_of_lambda(3.0) == 0.0);
  CHECK(k.s_of_lambda(10.0) == 0.0);
  const auto p = RadialKernel::power(1.0, 2);
  CHECK(p.s_of_lambda(0.25) == doctest::Approx(bisect_s_of_lambda(p, 0.25, 1e3)).epsilon(1e-9));
  CHECK(p.s_of_lambda(0.25) == doctest::Approx(4.0));
}

TEST_CASE("s_of_lambda inverts the profile at continuity points") {
  const auto p = RadialKernel::power(0.5, 2);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.01, 5.0);
  for (int i = 0; i < 100; ++i) {
    const double t = u(rng);
    CHECK(p.s_of_lambda(t) == doctest::Approx(p.eval(t)).epsilon(1e-9));
  }
  const auto k = three_step();
  for (int i = 0; i < 100; ++i) {
    const double t = u(rng) * 0.6;
    if (std::abs(t - std::round(t)) < 1e-9) continue;
    CHECK(k.s_of_lambda(t) == k.eval(t));
  }
}

TEST_CASE("sigma characterization") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> level(0.0, 3.5);
  std::uniform_real_distribution<double> diam(0.1, 3.5);
  const auto k = three_step();
  for (int i = 0; i < 100; ++i) {
    const double s = level(rng);
    const double d = diam(rng);
    CHECK((k.distribution(s) > d) == (s < k.sigma_level(d)));
  }
}

TEST_CASE("plateau length bounds the level preimage") {
  // L^1({s : 0 < r(s) < lambda}) on a fine grid.
  const auto k = three_step();
  auto preimage = [&](double lambda) {
    const int n = 30000;
    double m = 0.0;
    for (int i = 0; i < n; ++i) {
      const double s = (i + 0.5) * k.ess_sup() / n;
      const double r = k.distribution(s);
      if (r > 0.0 && r < lambda) m += k.ess_sup() / n;
    }
    return m;
  };
  CHECK(preimage(1.5) > 0.5);
  CHECK(preimage(0.9) == 0.0);
}

TEST_CASE("improved integrability") {
  const auto ok = RadialKernel::power(0.5, 2).improved_integrability();
  CHECK(ok.converges);
  CHECK(ok.tail == 1.0);
  CHECK_FALSE(ok.numeric);
  CHECK_FALSE(RadialKernel::power(1.0, 2).improved_integrability().converges);
  // Step: r = 2 on [1, 2), r = 1 on [2, 3).
  CHECK(three_step().improved_integrability().tail == 3.0);
  const auto table = RadialKernel::table({{1.0, 3.0}, {2.0, 2.0}, {3.0, 1.0}}, 2).improved_integrability();
  CHECK(table.converges);
  CHECK(table.numeric);
  CHECK(table.tail == doctest::Approx(3.0).epsilon(1e-9));
}

TEST_CASE("table kernels merge equal neighbours") {
  const auto k = RadialKernel::table({{1.0, 3.0}, {2.0, 3.0}, {3.0, 1.0}, {4.0, 0.0}}, 2);
  REQUIRE(k.levels().size() == 2);
  CHECK(k.levels()[0] == 3.0);
  CHECK(k.radii()[0] == 2.0);
  CHECK(k.radii()[1] == 3.0);
  CHECK(k.plateau_eta() == 2.0);
  CHECK_THROWS_AS(RadialKernel::table({{1.0, 1.0}, {2.0, 2.0}}, 2), std::invalid_argument);
}

TEST_CASE("invalid kernels are rejected") {
  CHECK_THROWS_AS(RadialKernel::power(2.0, 2), std::invalid_argument);
  CHECK_THROWS_AS(RadialKernel::power(-1.0, 2), std::invalid_argument);
  CHECK_THROWS_AS(RadialKernel::step({1, 2}, {1, 2}, 2), std::invalid_argument);
  CHECK_THROWS_AS(RadialKernel::step({2, 1}, {2, 1}, 2), std::invalid_argument);
  CHECK_THROWS_AS(RadialKernel::indicator(0.0, 2), std::invalid_argument);
  CHECK_THROWS_AS(RadialKernel::indicator(1.0, 4), std::invalid_argument);
}

TEST_CASE("masses") {
  const double pi = std::numbers::pi;
  CHECK(nlc::unit_ball_volume(1) == 2.0);
  CHECK(nlc::unit_ball_volume(2) == doctest::Approx(pi));
  CHECK(nlc::unit_ball_volume(3) == doctest::Approx(4.0 * pi / 3.0));
  CHECK(RadialKernel::indicator(0.8, 2).ball_mass(5.0) == doctest::Approx(pi * 0.64));
  CHECK(three_step().l1_norm() == doctest::Approx(pi * (3 * 1 + 2 * 3 + 1 * 5)));
  // int_{B_rho} |x|^-alpha = 2 pi rho^(2 - alpha) / (2 - alpha) in the plane.
  CHECK(RadialKernel::power(0.5, 2).ball_mass(2.0) == doctest::Approx(2 * pi * std::pow(2.0, 1.5) / 1.5).epsilon(1e-8));
  CHECK(std::isinf(RadialKernel::power(0.5, 2).l1_norm()));
  CHECK(std::isinf(RadialKernel::power(0.5, 2).eval(0.0)));
  CHECK(RadialKernel::power(0.5, 2).plateau_eta() == 0.0);
}

}  // TEST_SUITE
