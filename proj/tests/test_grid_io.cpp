#include <sstream>
#include <stdexcept>

#include "doctest.h"
#include "nlc/grid.hpp"
#include "nlc/grid_io.hpp"

using namespace nlc;

namespace {

IndicatorGrid load(const std::string& text) {
  std::istringstream in(text);
  return load_grid(in);
}

}  // namespace

TEST_SUITE("grid_io") {

TEST_CASE("round trip") {
  const auto disk = from_balls({{0.25, -0.5, 0}}, 0.7, 1.0 / 32, 2);
  for (auto enc : {GridEncoding::raw, GridEncoding::rle}) {
    std::stringstream buf;
    save_grid(buf, disk, enc);
    CHECK(load_grid(buf) == disk);
  }
  const auto ball = from_balls({Point{}}, 0.5, 0.125, 3);
  std::stringstream buf;
  save_grid(buf, ball);
  CHECK(load_grid(buf) == ball);
}

TEST_CASE("header layout") {
  IndicatorGrid g(2, {2, 3, 1}, {0, 0.5, 0}, 0.25, {1, 0, 1, 1, 1, 0});
  std::stringstream buf;
  save_grid(buf, g, GridEncoding::raw);
  CHECK(buf.str() == "NLGRID v1\nd 2\ndims 2 3\norigin 0 0.5\nspacing 0.25\nencoding raw\n101\n110\n");
  std::stringstream rle;
  save_grid(rle, g, GridEncoding::rle);
  CHECK(rle.str() == "NLGRID v1\nd 2\ndims 2 3\norigin 0 0.5\nspacing 0.25\nencoding rle\n1 1\n0 1\n1 3\n0 1\n");
}

TEST_CASE("malformed files are rejected") {
  const std::string head = "NLGRID v1\nd 1\ndims 4\norigin 0\nspacing 1\n";
  CHECK(load(head + "encoding raw\n0110\n").occupied_count() == 2);
  CHECK_THROWS_AS(load(head + "encoding raw\n0110\n1\n"), std::runtime_error);
  CHECK_THROWS_AS(load(head + "encoding raw\n011\n"), std::runtime_error);
  CHECK_THROWS_AS(load(head + "encoding rle\n0 1\n1 2\n"), std::runtime_error);
  CHECK_THROWS_AS(load(head + "encoding rle\n0 1\n1 4\n"), std::runtime_error);
  CHECK_THROWS_AS(load(head + "encoding rle\n0 4\nextra\n"), std::runtime_error);
  CHECK_THROWS_AS(load(head + "encoding zip\n"), std::runtime_error);
  CHECK_THROWS_AS(load("NLGRID v2\n"), std::runtime_error);
  CHECK_THROWS_AS(load("NLGRID v1\nd 1\ndims 4\norigin 0\nspacing -1\nencoding raw\n0000\n"), std::runtime_error);
  CHECK_THROWS_WITH_AS(load(head + "encoding raw\n01a0\n"), doctest::Contains("line 7"), std::runtime_error);
}

}  // TEST_SUITE
