#include <cmath>
#include <sstream>
#include <stdexcept>

#include "doctest.h"
#include "nlc/config.hpp"

using namespace nlc;

namespace {

RunConfig parse(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in, "test.cfg");
}

std::string error_of(const std::string& text) {
  try {
    parse(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_SUITE("config") {

TEST_CASE("full configuration") {
  const auto cfg = parse(R"(# two disks
[kernel]
kind = step
d = 2
levels = 3, 2, 1
radii = 1, 2, 3

[set]
balls = (-2.5, 0), (2.5, 0)
radius = 1

[grid]
spacing = 0.015625
margin = 3

[run]
seed = 7
dirs = 16
pair_budget = 5000
steiner_tol = 1.5
check_nondegeneracy = false
)");
  CHECK(cfg.has_kernel);
  const auto k = cfg.kernel.build();
  CHECK(k.family() == ProfileFamily::step);
  CHECK(k.plateau_eta() == 1.0);
  CHECK(cfg.set.source == SetSource::balls);
  REQUIRE(cfg.set.centers.size() == 2);
  CHECK(cfg.set.centers[1][0] == 2.5);
  CHECK(cfg.spacing == 1.0 / 64);
  CHECK(cfg.margin == 3);
  CHECK(cfg.dirs == 16);
  CHECK(cfg.nondegeneracy.seed == 7);
  CHECK(cfg.rigidity.nondegeneracy.seed == 7);
  CHECK(cfg.nondegeneracy.pair_budget == 5000);
  CHECK(cfg.sweep.steiner_tol == 1.5);
  CHECK(cfg.rigidity.sweep.steiner_tol == 1.5);
  CHECK_FALSE(cfg.rigidity.check_nondegeneracy);
  const auto set = build_set(cfg);
  CHECK(set.dimension() == 2);
  CHECK(set.has_margin(3));
}

TEST_CASE("kernel kinds") {
  CHECK(parse("[kernel]\nkind = power\nd = 3\nalpha = 0.5\n").kernel.build().family() == ProfileFamily::power);
  CHECK(parse("[kernel]\nkind = indicator\nr = 2\n").kernel.build().support_radius() == 2.0);
  const auto t = parse("[kernel]\nkind = table\npairs = (1, 3), (2, 1)\n").kernel.build();
  CHECK(t.eval(1.5) == 1.0);
  const auto e = parse("[kernel]\nkind = indicator\nr = 1\n[set]\nellipse = 2, 1\ncenter = 0.5, 0\n");
  CHECK(e.set.source == SetSource::ellipse);
  CHECK(e.set.center[0] == 0.5);
}

TEST_CASE("errors name the line") {
  CHECK(error_of("[kernel]\nkind = step\n\nfoo = 1\n") == "test.cfg line 4: unknown key 'foo' in [kernel]");
  CHECK(error_of("[nope]\n").rfind("test.cfg line 1: unknown section", 0) == 0);
  CHECK(error_of("x = 1\n").find("outside a section") != std::string::npos);
  CHECK(error_of("[run]\nseed = 1\nseed = 2\n").rfind("test.cfg line 3: duplicate key", 0) == 0);
  CHECK(error_of("[run]\ndirs = zero\n").rfind("test.cfg line 2:", 0) == 0);
  CHECK(error_of("[grid]\nspacing = -1\n").find("spacing must be positive") != std::string::npos);
  CHECK(error_of("[kernel]\nkind = power\nalpha = 2\n").rfind("test.cfg line 1: invalid kernel", 0) == 0);
  CHECK(error_of("[kernel]\nkind = step\nlevels = 1, 2\nradii = 1, 2\n").find("invalid kernel") != std::string::npos);
  CHECK(error_of("[kernel]\nkind = indicator\nr = 1\n[set]\nballs = (0, 0, 0)\n").rfind("test.cfg line 4:", 0) == 0);
  CHECK(error_of("[kernel]\nkind = indicator\nr = 1\n[set]\nballs = (0, 0)\nellipse = 1, 1\n")
            .find("more than one set source") != std::string::npos);
  CHECK(error_of("[kernel]\nkind = indicator\nr = 1\n[set]\nradius = 1\n").find("needs one of") != std::string::npos);
  CHECK(error_of("[run]\ncheck_nondegeneracy = yes\n").find("true or false") != std::string::npos);
  CHECK(error_of("[set\n").find("malformed section") != std::string::npos);
}

TEST_CASE("missing set") {
  const auto cfg = parse("[kernel]\nkind = indicator\nr = 1\n");
  CHECK_THROWS_AS(build_set(cfg), ConfigError);
}

TEST_CASE("sweep directions") {
  const auto d2 = sweep_directions(2, 4);
  REQUIRE(d2.size() == 4);
  CHECK(d2[1][1] == doctest::Approx(1.0));
  CHECK(d2[2][0] == doctest::Approx(-1.0));
  for (const auto& p : sweep_directions(3, 20)) CHECK(std::hypot(p[0], p[1], p[2]) == doctest::Approx(1.0));
  CHECK(sweep_directions(1, 2)[1][0] == -1.0);
  CHECK_THROWS(sweep_directions(2, 0));
}

}  // TEST_SUITE
