#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "nlc/curvature.hpp"
#include "nlc/grid.hpp"
#include "nlc/kernel.hpp"
#include "nlc/moving_planes.hpp"
#include "nlc/rigidity.hpp"

namespace nlc {

/// Malformed configuration; the message starts with "<source> line N:" when
/// a line is to blame.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct KernelSpec {
  ProfileFamily kind = ProfileFamily::step;
  int dim = 2;
  double alpha = 0.0;
  std::vector<double> levels;
  std::vector<double> radii;
  double r = 0.0;
  /// (t, phi) pairs of a table kernel.
  std::vector<std::pair<double, double>> pieces;

  RadialKernel build() const;
};

enum class SetSource { none, balls, file, ellipse };

struct SetSpec {
  SetSource source = SetSource::none;
  std::vector<Point> centers;
  double radius = 1.0;
  /// Resolved against the config file's directory.
  std::filesystem::path file;
  Point semi_axes{};
  Point center{};
};

struct RunConfig {
  bool has_kernel = false;
  KernelSpec kernel;
  SetSpec set;
  double spacing = 1.0 / 128.0;
  int margin = 2;
  std::uint64_t seed = 0;
  /// 0 keeps the process default.
  unsigned threads = 0;
  int dirs = 1;
  std::filesystem::path out = ".";
  MassOptions mass;
  NondegeneracyOptions nondegeneracy;
  SweepOptions sweep;
  RigidityOptions rigidity;
};

/// INI-style text: `[kernel]`, `[set]`, `[grid]`, `[run]` sections of
/// `key = value` lines, `#` comments. See README for the keys.
RunConfig parse_config(std::istream& in, const std::string& source = "config",
                       const std::filesystem::path& base = {});
RunConfig load_config(const std::filesystem::path& path);

/// Rasterizes (or loads) the configured set. Throws ConfigError when no
/// source is configured or the dimensions disagree with the kernel.
IndicatorGrid build_set(const RunConfig& config);

/// Unit directions of a sweep fan: k equally spaced angles in d = 2, a
/// Fibonacci lattice on the sphere in d = 3, +-e_1 in d = 1.
std::vector<Point> sweep_directions(int dim, int count);

}  // namespace nlc
