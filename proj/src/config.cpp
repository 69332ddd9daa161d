#include "nlc/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <set>

#include "nlc/grid_io.hpp"

namespace nlc {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

class Parser {
 public:
  Parser(std::string source, std::filesystem::path base) : source_(std::move(source)), base_(std::move(base)) {}

  [[noreturn]] void fail(int line, const std::string& what) const {
    throw ConfigError(source_ + " line " + std::to_string(line) + ": " + what);
  }

  double number(int line, const std::string& text) const {
    const std::string t = trim(text);
    double v = 0.0;
    const auto [end, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || ec != std::errc() || end != t.data() + t.size() || !std::isfinite(v)) {
      fail(line, "expected a number, got '" + t + "'");
    }
    return v;
  }

  std::int64_t integer(int line, const std::string& text, std::int64_t lo) const {
    const std::string t = trim(text);
    std::int64_t v = 0;
    const auto [end, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || ec != std::errc() || end != t.data() + t.size()) fail(line, "expected an integer, got '" + t + "'");
    if (v < lo) fail(line, "value must be at least " + std::to_string(lo));
    return v;
  }

  std::vector<double> numbers(int line, const std::string& text) const {
    std::vector<double> out;
    std::string item;
    for (char c : text + ",") {
      if (c == ',') {
        out.push_back(number(line, item));
        item.clear();
      } else {
        item += c;
      }
    }
    return out;
  }

  // "(a, b), (c, d)"
  std::vector<std::vector<double>> tuples(int line, const std::string& text) const {
    std::vector<std::vector<double>> out;
    std::size_t i = 0;
    const std::string t = trim(text);
    while (i < t.size()) {
      if (t[i] == ' ' || t[i] == '\t' || t[i] == ',') {
        ++i;
        continue;
      }
      if (t[i] != '(') fail(line, "expected '(' in tuple list");
      const auto close = t.find(')', i);
      if (close == std::string::npos) fail(line, "unterminated tuple");
      out.push_back(numbers(line, t.substr(i + 1, close - i - 1)));
      i = close + 1;
    }
    if (out.empty()) fail(line, "empty tuple list");
    return out;
  }

  RunConfig parse(std::istream& in) {
    RunConfig cfg;
    std::string section;
    std::set<std::string> seen;
    std::string raw;
    int line = 0;
    int kernel_line = 0;
    int set_line = 0;
    bool has_radius = false;
    while (std::getline(in, raw)) {
      ++line;
      const auto hash = raw.find('#');
      const std::string text = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
      if (text.empty()) continue;
      if (text.front() == '[') {
        if (text.back() != ']') fail(line, "malformed section header");
        section = trim(text.substr(1, text.size() - 2));
        if (section != "kernel" && section != "set" && section != "grid" && section != "run") {
          fail(line, "unknown section [" + section + "]");
        }
        if (section == "kernel") {
          cfg.has_kernel = true;
          kernel_line = line;
        }
        if (section == "set") set_line = line;
        continue;
      }
      const auto eq = text.find('=');
      if (eq == std::string::npos) fail(line, "expected 'key = value'");
      const std::string key = trim(text.substr(0, eq));
      const std::string value = trim(text.substr(eq + 1));
      if (section.empty()) fail(line, "key '" + key + "' outside a section");
      if (!seen.insert(section + "." + key).second) fail(line, "duplicate key '" + key + "'");
      if (value.empty()) fail(line, "missing value for '" + key + "'");

      if (section == "kernel") {
        kernel_key(cfg.kernel, line, key, value);
      } else if (section == "set") {
        if (key == "radius") has_radius = true;
        set_key(cfg.set, line, key, value);
      } else if (section == "grid") {
        if (key == "spacing") {
          cfg.spacing = number(line, value);
          if (!(cfg.spacing > 0.0)) fail(line, "spacing must be positive");
        } else if (key == "margin") {
          cfg.margin = static_cast<int>(integer(line, value, 1));
        } else {
          fail(line, "unknown key '" + key + "' in [grid]");
        }
      } else {
        run_key(cfg, line, key, value);
      }
    }

    if (cfg.has_kernel) {
      try {
        (void)cfg.kernel.build();
      } catch (const std::exception& e) {
        fail(kernel_line, std::string("invalid kernel: ") + e.what());
      }
    }
    if (set_line != 0) {
      if (cfg.set.source == SetSource::none) fail(set_line, "[set] needs one of balls, file, ellipse");
      if (has_radius && cfg.set.source != SetSource::balls) fail(set_line, "radius only applies to balls");
      const int d = cfg.kernel.dim;
      auto check = [&](std::size_t n) {
        if (n != static_cast<std::size_t>(d)) fail(set_line, "coordinates must have " + std::to_string(d) + " entries");
      };
      if (cfg.set.source == SetSource::balls) {
        for (std::size_t n : center_sizes_) check(n);
        if (!(cfg.set.radius > 0.0)) fail(set_line, "radius must be positive");
      }
      if (cfg.set.source == SetSource::ellipse) {
        check(ellipse_size_);
        if (center_size_ != 0) check(center_size_);
        for (int k = 0; k < d; ++k) {
          if (!(cfg.set.semi_axes[k] > 0.0)) fail(set_line, "semi-axes must be positive");
        }
      }
    }
    cfg.rigidity.sweep = cfg.sweep;
    cfg.rigidity.nondegeneracy.seed = cfg.nondegeneracy.seed;
    return cfg;
  }

 private:
  void kernel_key(KernelSpec& k, int line, const std::string& key, const std::string& value) {
    if (key == "kind") {
      static const std::map<std::string, ProfileFamily> kinds{{"power", ProfileFamily::power},
                                                              {"step", ProfileFamily::step},
                                                              {"indicator", ProfileFamily::indicator},
                                                              {"table", ProfileFamily::table}};
      const auto it = kinds.find(value);
      if (it == kinds.end()) fail(line, "unknown kernel kind '" + value + "'");
      k.kind = it->second;
    } else if (key == "d") {
      const auto d = integer(line, value, 1);
      if (d > 3) fail(line, "dimension must be 1, 2 or 3");
      k.dim = static_cast<int>(d);
    } else if (key == "alpha") {
      k.alpha = number(line, value);
    } else if (key == "levels") {
      k.levels = numbers(line, value);
    } else if (key == "radii") {
      k.radii = numbers(line, value);
    } else if (key == "r") {
      k.r = number(line, value);
    } else if (key == "pairs") {
      for (const auto& t : tuples(line, value)) {
        if (t.size() != 2) fail(line, "table pairs are (t, phi)");
        k.pieces.emplace_back(t[0], t[1]);
      }
    } else {
      fail(line, "unknown key '" + key + "' in [kernel]");
    }
  }

  void set_key(SetSpec& s, int line, const std::string& key, const std::string& value) {
    auto source = [&](SetSource src) {
      if (s.source != SetSource::none) fail(line, "more than one set source");
      s.source = src;
    };
    auto point = [&](const std::vector<double>& v, std::size_t& size) {
      if (v.empty() || v.size() > 3) fail(line, "points need 1 to 3 coordinates");
      Point p{};
      for (std::size_t k = 0; k < v.size(); ++k) p[k] = v[k];
      size = v.size();
      return p;
    };
    if (key == "balls") {
      source(SetSource::balls);
      for (const auto& t : tuples(line, value)) {
        center_sizes_.emplace_back();
        s.centers.push_back(point(t, center_sizes_.back()));
      }
    } else if (key == "radius") {
      s.radius = number(line, value);
    } else if (key == "file") {
      source(SetSource::file);
      s.file = base_ / std::filesystem::path(value);
    } else if (key == "ellipse") {
      source(SetSource::ellipse);
      s.semi_axes = point(numbers(line, value), ellipse_size_);
    } else if (key == "center") {
      s.center = point(numbers(line, value), center_size_);
    } else {
      fail(line, "unknown key '" + key + "' in [set]");
    }
  }

  void run_key(RunConfig& c, int line, const std::string& key, const std::string& value) {
    auto positive = [&](double v) {
      if (!(v > 0.0)) fail(line, key + " must be positive");
      return v;
    };
    auto non_negative = [&](double v) {
      if (!(v >= 0.0)) fail(line, key + " must not be negative");
      return v;
    };
    if (key == "seed") {
      c.nondegeneracy.seed = static_cast<std::uint64_t>(integer(line, value, 0));
    } else if (key == "threads") {
      c.threads = static_cast<unsigned>(integer(line, value, 0));
    } else if (key == "dirs") {
      c.dirs = static_cast<int>(integer(line, value, 1));
    } else if (key == "out") {
      c.out = base_ / std::filesystem::path(value);
    } else if (key == "pair_budget") {
      c.nondegeneracy.pair_budget = static_cast<std::size_t>(integer(line, value, 1));
    } else if (key == "strata") {
      c.nondegeneracy.strata = static_cast<int>(integer(line, value, 1));
    } else if (key == "panels") {
      c.mass.power_panels = static_cast<int>(integer(line, value, 1));
    } else if (key == "sweep_step") {
      c.sweep.step = non_negative(number(line, value));
    } else if (key == "refinements") {
      c.sweep.refinements = static_cast<int>(integer(line, value, 0));
    } else if (key == "inclusion_layers") {
      c.sweep.inclusion_layers = non_negative(number(line, value));
    } else if (key == "inclusion_tol") {
      c.sweep.inclusion_tol = non_negative(number(line, value));
    } else if (key == "away_slab") {
      c.sweep.away_slab = non_negative(number(line, value));
    } else if (key == "close_slab") {
      c.sweep.close_slab = positive(number(line, value));
    } else if (key == "steiner_tol") {
      c.sweep.steiner_tol = non_negative(number(line, value));
    } else if (key == "fit_rms") {
      c.rigidity.fit_rms = positive(number(line, value));
    } else if (key == "criticality_factor") {
      c.rigidity.criticality_factor = positive(number(line, value));
    } else if (key == "bound_slack") {
      c.rigidity.bound_slack = non_negative(number(line, value));
    } else if (key == "radius_spread") {
      c.rigidity.radius_spread = non_negative(number(line, value));
    } else if (key == "max_balls") {
      c.rigidity.max_balls = static_cast<std::size_t>(integer(line, value, 1));
    } else if (key == "rigidity_pair_budget") {
      c.rigidity.nondegeneracy.pair_budget = static_cast<std::size_t>(integer(line, value, 1));
    } else if (key == "check_nondegeneracy") {
      if (value != "true" && value != "false") fail(line, "expected true or false");
      c.rigidity.check_nondegeneracy = value == "true";
    } else {
      fail(line, "unknown key '" + key + "' in [run]");
    }
  }

  std::string source_;
  std::filesystem::path base_;
  std::vector<std::size_t> center_sizes_;
  std::size_t ellipse_size_ = 0;
  std::size_t center_size_ = 0;
};

}  // namespace

RadialKernel KernelSpec::build() const {
  switch (kind) {
    case ProfileFamily::power: return RadialKernel::power(alpha, dim);
    case ProfileFamily::step: return RadialKernel::step(levels, radii, dim);
    case ProfileFamily::indicator: return RadialKernel::indicator(r, dim);
    case ProfileFamily::table: return RadialKernel::table(pieces, dim);
  }
  throw std::logic_error("unhandled kernel kind");
}

RunConfig parse_config(std::istream& in, const std::string& source, const std::filesystem::path& base) {
  return Parser(source, base).parse(in);
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  return parse_config(in, path.string(), path.parent_path());
}

IndicatorGrid build_set(const RunConfig& config) {
  const int dim = config.kernel.dim;
  switch (config.set.source) {
    case SetSource::none: throw ConfigError("no set configured");
    case SetSource::balls: return from_balls(config.set.centers, config.set.radius, config.spacing, dim, config.margin);
    case SetSource::ellipse:
      return from_ellipsoid(config.set.center, config.set.semi_axes, config.spacing, dim, config.margin);
    case SetSource::file: {
      IndicatorGrid g = load_grid(config.set.file);
      if (g.dimension() != dim) {
        throw ConfigError(config.set.file.string() + ": grid dimension " + std::to_string(g.dimension()) +
                          " differs from kernel dimension " + std::to_string(dim));
      }
      return g;
    }
  }
  throw std::logic_error("unhandled set source");
}

std::vector<Point> sweep_directions(int dim, int count) {
  if (count < 1) throw std::invalid_argument("sweep_directions: count must be positive");
  std::vector<Point> out;
  const double pi = std::numbers::pi;
  for (int i = 0; i < count; ++i) {
    if (dim == 1) {
      out.push_back({i % 2 == 0 ? 1.0 : -1.0, 0.0, 0.0});
    } else if (dim == 2) {
      const double a = 2.0 * pi * i / count;
      out.push_back({std::cos(a), std::sin(a), 0.0});
    } else {
      const double z = 1.0 - (2.0 * i + 1.0) / count;
      const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double a = pi * (3.0 - std::sqrt(5.0)) * i;
      out.push_back({rho * std::cos(a), rho * std::sin(a), z});
    }
  }
  return out;
}

}  // namespace nlc
