#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "doctest.h"
#include "nlc/grid.hpp"
#include "nlc/grid_io.hpp"

namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("nlcurv_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

void write(const fs::path& path, const std::string& text) { std::ofstream(path) << text; }

std::string read(const fs::path& path) {
  std::ifstream in(path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

int run(const std::string& args, const fs::path& dir) {
  const std::string cmd = std::string(NLCURV_BIN) + " " + args + " > " + (dir / "stdout.txt").string() + " 2> " +
                          (dir / "stderr.txt").string();
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

const char* kDisk = R"([kernel]
kind = indicator
d = 2
r = 0.8
[set]
balls = (0, 0)
radius = 1
[grid]
spacing = 0.03125
)";

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("kernel-info") {
  const auto dir = scratch("kernel");
  write(dir / "k.cfg", "[kernel]\nkind = step\nlevels = 3, 2, 1\nradii = 1, 2, 3\n");
  CHECK(run("kernel-info --config " + (dir / "k.cfg").string() + " --out " + dir.string(), dir) == 0);
  const std::string csv = read(dir / "kernel.csv");
  CHECK(csv.rfind("s,r_of_s\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 66);
  const std::string text = read(dir / "stdout.txt");
  CHECK(text.find("eta = 1\n") != std::string::npos);
  CHECK(text.find("r(0) = 3\n") != std::string::npos);
}

TEST_CASE("set-build, criticality, nondeg and sweep write their files") {
  const auto dir = scratch("files");
  const std::string cfg = (dir / "disk.cfg").string();
  write(cfg, kDisk);
  const std::string out = " --config " + cfg + " --out " + dir.string();
  CHECK(run("set-build" + out, dir) == 0);
  CHECK(nlc::load_grid((dir / "set.nlgrid").string()) ==
        nlc::from_balls({nlc::Point{}}, 1.0, 0.03125, 2));
  CHECK(run("criticality" + out, dir) == 0);
  CHECK(read(dir / "criticality.csv").rfind("x1,x2,value\n", 0) == 0);
  CHECK(run("nondeg" + out + " --seed 3", dir) == 0);
  CHECK(read(dir / "nondeg.csv").rfind("x1,x2,y1,y2,distance,quotient\n", 0) == 0);
  CHECK(run("sweep" + out, dir) == 0);
  CHECK(fs::exists(dir / "sweep.csv"));
  CHECK(run("sweep" + out + " --dirs 3", dir) == 0);
  CHECK(fs::exists(dir / "sweep_02.csv"));
  const std::string summary = read(dir / "sweeps.csv");
  CHECK(summary.rfind("index,nu1,nu2,T,status,", 0) == 0);
  CHECK(std::count(summary.begin(), summary.end(), '\n') == 4);
}

TEST_CASE("verify exit codes") {
  const auto dir = scratch("verify");
  const std::string disk = (dir / "disk.cfg").string();
  write(disk, kDisk);
  CHECK(run("verify --config " + disk + " --out " + dir.string(), dir) == 0);
  CHECK(read(dir / "rigidity.json").find("\"verdict\": \"pass\"") != std::string::npos);

  const std::string ellipse = (dir / "ellipse.cfg").string();
  write(ellipse, "[kernel]\nkind = indicator\nr = 0.8\n[set]\nellipse = 1.41421356, 0.70710678\n[grid]\nspacing = 0.03125\n");
  CHECK(run("verify --config " + ellipse + " --out " + dir.string(), dir) == 2);
  CHECK(read(dir / "stderr.txt").find("not applicable") != std::string::npos);

  nlc::save_grid((dir / "empty.nlgrid").string(), nlc::IndicatorGrid(2, {8, 8, 1}, {0, 0, 0}, 0.125));
  const std::string empty = (dir / "empty.cfg").string();
  write(empty, "[kernel]\nkind = indicator\nr = 1\n[set]\nfile = empty.nlgrid\n");
  CHECK(run("verify --config " + empty + " --out " + dir.string(), dir) == 2);
}

TEST_CASE("usage errors") {
  const auto dir = scratch("usage");
  CHECK(run("", dir) == 2);
  CHECK(run("verify", dir) == 2);
  CHECK(run("verify --config " + (dir / "missing.cfg").string(), dir) == 2);
  write(dir / "bad.cfg", "[kernel]\nkind = wobbly\n");
  CHECK(run("kernel-info --config " + (dir / "bad.cfg").string() + " --out " + dir.string(), dir) == 2);
  CHECK(read(dir / "stderr.txt").find("line 2: unknown kernel kind") != std::string::npos);
  write(dir / "ok.cfg", kDisk);
  CHECK(run("verify --config " + (dir / "ok.cfg").string() + " --spacing -1", dir) == 2);
}

}  // TEST_SUITE
