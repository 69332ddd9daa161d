#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

#include "doctest.h"
#include "json.hpp"
#include "nlc/rigidity.hpp"

using namespace nlc;

namespace {

constexpr double kPi = std::numbers::pi;

double lens_monte_carlo(double r1, double r2, double dist, int dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-r1, r1);
  constexpr int kSamples = 4'000'000;
  int hits = 0;
  for (int i = 0; i < kSamples; ++i) {
    double p[3] = {0, 0, 0};
    for (int k = 0; k < dim; ++k) p[k] = u(rng);
    const double a = p[0] * p[0] + p[1] * p[1] + p[2] * p[2];
    const double b = (p[0] - dist) * (p[0] - dist) + p[1] * p[1] + p[2] * p[2];
    hits += (a <= r1 * r1 && b <= r2 * r2) ? 1 : 0;
  }
  return std::pow(2 * r1, dim) * hits / kSamples;
}

// int_{B_R} |x - y|^-alpha dy for |x| = R in d = 2, in polar coordinates
// around x: the circle of radius rho meets B_R in an arc of angle
// 2 acos(rho / 2R). Composite Simpson in u = sqrt(rho).
double power_disk_constant(double alpha, double R) {
  constexpr int n = 200'000;
  const double top = std::sqrt(2 * R);
  auto f = [&](double u) { return 2 * std::pow(u, 3 - 2 * alpha) * 2 * std::acos(std::min(1.0, u * u / (2 * R))); };
  double s = f(0) + f(top);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4 : 2) * f(top * i / n);
  return s * top / (3.0 * n);
}

RadialKernel three_step() { return RadialKernel::step({3, 2, 1}, {1, 2, 3}, 2); }

}  // namespace

TEST_SUITE("rigidity") {

TEST_CASE("lens measures against Monte Carlo") {
  const double cases[][3] = {{1.0, 0.8, 1.0}, {1.0, 1.0, 0.5}, {1.0, 0.3, 1.1}, {1.0, 2.0, 1.5}};
  std::uint64_t seed = 1;
  for (const auto& c : cases) {
    for (int dim : {2, 3}) {
      CAPTURE(dim);
      CAPTURE(c[2]);
      const double exact = lens_measure(c[0], c[1], c[2], dim);
      CHECK(exact == doctest::Approx(lens_monte_carlo(c[0], c[1], c[2], dim, seed++)).epsilon(5e-3));
    }
  }
}

TEST_CASE("lens limiting cases") {
  CHECK(lens_area(1.0, 0.5, 3.0) == 0.0);
  CHECK(lens_area(1.0, 0.5, 0.2) == doctest::Approx(kPi * 0.25));
  CHECK(lens_volume(1.0, 2.0, 0.5) == doctest::Approx(4 * kPi / 3));
  CHECK(lens_measure(1.0, 0.8, 1.0, 1) == doctest::Approx(0.8));
  CHECK(lens_measure(1.0, 0.8, 0.5, 1) == doctest::Approx(1.3));
  CHECK(lens_measure(1.0, 0.3, 0.5, 1) == doctest::Approx(0.6));
  CHECK(lens_measure(1.0, 1.0, 0.0, 2) == doctest::Approx(kPi));
}

TEST_CASE("ball constant of piecewise kernels") {
  const auto ind = RadialKernel::indicator(0.8, 2);
  CHECK(ball_constant_oracle(ind, 1.0, 2) == doctest::Approx(lens_area(1.0, 0.8, 1.0)));
  CHECK(ball_constant_oracle(RadialKernel::indicator(3.0, 2), 1.0, 2) == doctest::Approx(kPi));
  const double stepped = lens_area(1, 1, 1) + lens_area(1, 2, 1) + lens_area(1, 3, 1);
  CHECK(ball_constant_oracle(three_step(), 1.0, 2) == doctest::Approx(stepped));
}

TEST_CASE("ball constant of the power kernel") {
  for (double alpha : {0.25, 0.5, 1.0, 1.5}) {
    CAPTURE(alpha);
    const auto k = RadialKernel::power(alpha, 2);
    CHECK(ball_constant_oracle(k, 1.0, 2) == doctest::Approx(power_disk_constant(alpha, 1.0)).epsilon(1e-6));
    CHECK(ball_constant_oracle(k, 2.0, 2) == doctest::Approx(power_disk_constant(alpha, 2.0)).epsilon(1e-6));
  }
  // d = 1: int_0^{2R} t^-alpha dt.
  const auto k1 = RadialKernel::power(0.5, 1);
  CHECK(ball_constant_oracle(k1, 1.0, 1) == doctest::Approx(2 * std::sqrt(2.0)).epsilon(1e-9));
}

TEST_CASE("ball fit") {
  std::vector<Point> pts;
  for (int i = 0; i < 40; ++i) {
    const double a = 2 * kPi * i / 40;
    pts.push_back({0.5 + 1.5 * std::cos(a), -1 + 1.5 * std::sin(a), 0});
  }
  const auto fit = fit_ball(pts, 2);
  CHECK(fit.center[0] == doctest::Approx(0.5));
  CHECK(fit.center[1] == doctest::Approx(-1.0));
  CHECK(fit.radius == doctest::Approx(1.5));
  CHECK(fit.rms < 1e-12);
  CHECK_THROWS_AS(fit_ball({pts[0], pts[1]}, 2), std::invalid_argument);
}

TEST_CASE("bounds on radii and gaps") {
  RigidityReport r;
  r.dim = 2;
  r.spacing = 1.0 / 128;
  DetectedBall a;
  a.center = {-2.5, 0, 0};
  a.radius = 1.0;
  DetectedBall b = a;
  b.center = {2.5, 0, 0};
  r.balls = {a, b};
  const auto k = three_step();
  CHECK(check_ball_bounds(r, k, 7.0));
  CHECK(r.eta == 1.0);
  CHECK(r.sigma == 0.0);
  CHECK(r.r_sigma == 3.0);
  REQUIRE(r.gaps.size() == 1);
  CHECK(r.gaps[0].gap == doctest::Approx(3.0));

  r.balls[1].center = {2.5 - 4 * r.spacing, 0, 0};
  r.reasons.clear();
  CHECK_FALSE(check_ball_bounds(r, k, 7.0));
  CHECK_FALSE(r.gaps[0].ok);
  CHECK_FALSE(r.reasons.empty());

  // A plateau of radius 3 needs R > 1.5.
  r.reasons.clear();
  CHECK_FALSE(check_ball_bounds(r, RadialKernel::indicator(3.0, 2), 7.0));
  CHECK_FALSE(r.balls[0].radius_ok);

  // eta = 0 for the power kernel, so any radius passes.
  RigidityReport p;
  p.spacing = 1.0 / 128;
  DetectedBall tiny;
  tiny.radius = 0.05;
  p.balls = {tiny};
  CHECK(check_ball_bounds(p, RadialKernel::power(0.5, 2), 0.1));
  p.balls.push_back(tiny);
  p.balls[1].center = {1, 0, 0};
  p.balls[1].radius = 0.2;
  CHECK_FALSE(check_ball_bounds(p, RadialKernel::power(0.5, 2), 1.2));
  CHECK_FALSE(p.radii_equal);
}

TEST_CASE("a single disk is one ball") {
  const double h = 1.0 / 32;
  const auto disk = from_balls({{0.25, 0, 0}}, 1.0, h, 2);
  const auto r = extract_balls(disk, three_step());
  CHECK(r.verdict == Verdict::pass);
  REQUIRE(r.balls.size() == 1);
  CHECK(r.balls[0].radius == doctest::Approx(1.0).epsilon(2 * h));
  CHECK(r.balls[0].center[0] == doctest::Approx(0.25).epsilon(2 * h));
  CHECK(r.residual_measure <= r.floor);
  CHECK(r.balls[0].measure + r.residual_measure == doctest::Approx(r.measure));
  CHECK(r.integrable);

  std::ostringstream out;
  write_rigidity_json(out, r);
  const auto j = nlohmann::json::parse(out.str());
  CHECK(j["verdict"] == "pass");
  CHECK(j["balls"].size() == 1);
  CHECK(j["r_sigma"].get<double>() == doctest::Approx(r.r_sigma));
}

TEST_CASE("an ellipse is not critical") {
  const auto e = from_ellipsoid({0, 0, 0}, {std::sqrt(2.0), std::sqrt(0.5), 0}, 1.0 / 32, 2);
  const auto r = extract_balls(e, RadialKernel::indicator(0.8, 2));
  CHECK(r.verdict == Verdict::not_applicable);
  REQUIRE_FALSE(r.reasons.empty());
  CHECK(r.reasons[0].rfind("not applicable: criticality", 0) == 0);
  CHECK(r.balls.empty());
}

TEST_CASE("kernels without improved integrability are not applicable") {
  const auto disk = from_balls({Point{}}, 0.5, 1.0 / 16, 2);
  const auto r = extract_balls(disk, RadialKernel::power(1.0, 2));
  CHECK(r.verdict == Verdict::not_applicable);
  CHECK_FALSE(r.integrable);
  CHECK(std::string(to_string(r.verdict)) == "not applicable");
}

}  // TEST_SUITE
