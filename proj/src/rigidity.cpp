#include "nlc/rigidity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include "json.hpp"

#include "format.hpp"

namespace nlc {

namespace {

constexpr double kPi = std::numbers::pi;

double clamp_unit(double x) { return std::clamp(x, -1.0, 1.0); }

// 16-point Gauss-Legendre nodes and weights on [-1, 1] (positive half).
constexpr double kGaussX[8] = {0.0950125098376374, 0.2816035507792589, 0.4580167776572274, 0.6178762444026438,
                               0.7554044083550030, 0.8656312023878318, 0.9445750230732326, 0.9894009349916499};
constexpr double kGaussW[8] = {0.1894506104550685, 0.1826034150449236, 0.1691565193950025, 0.1495959888165767,
                               0.1246289712555339, 0.0951585116824928, 0.0622535239386479, 0.0271524594117541};

template <typename F>
double gauss_legendre(const F& f, double a, double b, int panels) {
  double total = 0.0;
  const double w = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * w;
    const double half = 0.5 * w;
    double s = 0.0;
    for (int k = 0; k < 8; ++k) s += kGaussW[k] * (f(mid - half * kGaussX[k]) + f(mid + half * kGaussX[k]));
    total += s * half;
  }
  return total;
}

// int_{B_R} |x - y|^-alpha dy for |x| = R. With t = |x - y| the integrand is
// t^(d-1-alpha) g(t), g(t) = (sphere of radius t about x inside B_R) / t^(d-1).
// t = 2R v^(1/(d-alpha)) flattens the power; v = 1 - w^2 removes the square
// root at t = 2R.
double power_ball_constant(double alpha, double radius, int dim) {
  const double p = 1.0 / (dim - alpha);
  auto g = [&](double u) {
    switch (dim) {
      case 1: return 1.0;
      case 2: return 2.0 * std::acos(clamp_unit(u));
      default: return 2.0 * kPi * (1.0 - u);
    }
  };
  auto integrand = [&](double w) {
    const double v = 1.0 - w * w;
    return g(std::pow(v, p)) * 2.0 * w;
  };
  return std::pow(2.0 * radius, dim - alpha) * p * gauss_legendre(integrand, 0.0, 1.0, 64);
}

std::vector<Point> fan_directions(int dim) {
  std::vector<Point> fan;
  if (dim == 1) return {{1.0, 0.0, 0.0}, {-1.0, 0.0, 0.0}};
  Point diag{};
  for (int k = 0; k < dim; ++k) {
    Point e{};
    e[k] = 1.0;
    fan.push_back(e);
    diag[k] = 1.0 / std::sqrt(static_cast<double>(dim));
  }
  fan.push_back(diag);
  return fan;
}

struct FanEntry {
  Point direction{};
  SweepReport sweep;
  Decomposition decomposition;
  std::vector<std::size_t> isolated;
};

// Ns components no larger than `limit` that touch the chosen component.
std::vector<std::size_t> slivers(const Decomposition& dec, const std::vector<std::uint8_t>& chosen, double limit) {
  const IndicatorGrid& ns = dec.nonsymmetric;
  const Components comps = connected_components(ns);
  const int dim = ns.dimension();
  std::vector<std::size_t> out;
  for (const auto& cells : comps.cells) {
    if (static_cast<double>(cells.size()) * ns.cell_volume() > limit) continue;
    bool touches = false;
    for (std::size_t lin : cells) {
      const CellIndex c = ns.unravel(lin);
      for (std::int64_t a = -1; a <= 1 && !touches; ++a) {
        for (std::int64_t b = (dim > 1 ? -1 : 0); b <= (dim > 1 ? 1 : 0) && !touches; ++b) {
          for (std::int64_t e = (dim > 2 ? -1 : 0); e <= (dim > 2 ? 1 : 0) && !touches; ++e) {
            const CellIndex q{c[0] + a, c[1] + b, c[2] + e};
            touches = ns.contains(q) && chosen[ns.linear(q)] != 0;
          }
        }
      }
      if (touches) break;
    }
    if (touches) out.insert(out.end(), cells.begin(), cells.end());
  }
  return out;
}

// Whether every other direction keeps the component inside one of its
// symmetric components, up to `slack` of measure.
bool consistent(const std::vector<FanEntry>& fan, std::size_t from, const std::vector<std::size_t>& cells, double slack,
                double vol) {
  for (std::size_t k = 0; k < fan.size(); ++k) {
    if (k == from) continue;
    const auto& label = fan[k].decomposition.components.label;
    std::map<std::int32_t, std::size_t> hits;
    for (std::size_t lin : cells) {
      if (label[lin] >= 0) ++hits[label[lin]];
    }
    std::size_t best = 0;
    for (const auto& [id, n] : hits) best = std::max(best, n);
    if (static_cast<double>(cells.size() - best) * vol > slack) return false;
  }
  return true;
}

}  // namespace

double lens_area(double r1, double r2, double dist) {
  if (r1 <= 0.0 || r2 <= 0.0 || dist >= r1 + r2) return 0.0;
  const double small = std::min(r1, r2);
  if (dist <= std::abs(r1 - r2)) return kPi * small * small;
  const double a1 = std::acos(clamp_unit((dist * dist + r1 * r1 - r2 * r2) / (2.0 * dist * r1)));
  const double a2 = std::acos(clamp_unit((dist * dist + r2 * r2 - r1 * r1) / (2.0 * dist * r2)));
  const double k = (-dist + r1 + r2) * (dist + r1 - r2) * (dist - r1 + r2) * (dist + r1 + r2);
  return r1 * r1 * a1 + r2 * r2 * a2 - 0.5 * std::sqrt(std::max(k, 0.0));
}

double lens_volume(double r1, double r2, double dist) {
  if (r1 <= 0.0 || r2 <= 0.0 || dist >= r1 + r2) return 0.0;
  const double small = std::min(r1, r2);
  if (dist <= std::abs(r1 - r2)) return 4.0 / 3.0 * kPi * small * small * small;
  const double s = r1 + r2 - dist;
  return kPi * s * s *
         (dist * dist + 2.0 * dist * r2 - 3.0 * r2 * r2 + 2.0 * dist * r1 + 6.0 * r1 * r2 - 3.0 * r1 * r1) /
         (12.0 * dist);
}

double lens_measure(double r1, double r2, double dist, int dim) {
  switch (dim) {
    case 1: return std::max(0.0, std::min(r1, dist + r2) - std::max(-r1, dist - r2));
    case 2: return lens_area(r1, r2, dist);
    case 3: return lens_volume(r1, r2, dist);
    default: throw std::invalid_argument("lens_measure: dimension must be 1, 2 or 3");
  }
}

double ball_constant_oracle(const RadialKernel& kernel, double radius, int dim) {
  if (!(radius > 0.0)) throw std::invalid_argument("ball_constant_oracle: radius must be positive");
  if (kernel.family() == ProfileFamily::power) return power_ball_constant(kernel.exponent(), radius, dim);
  double total = 0.0;
  double inner = 0.0;
  const auto radii = kernel.radii();
  const auto levels = kernel.levels();
  for (std::size_t i = 0; i < radii.size(); ++i) {
    const double outer = lens_measure(radius, radii[i], radius, dim);
    total += levels[i] * (outer - inner);
    inner = outer;
  }
  return total;
}

BallFit fit_ball(const std::vector<Point>& points, int dim) {
  const std::size_t n = points.size();
  if (n < static_cast<std::size_t>(dim) + 1) throw std::invalid_argument("fit_ball: too few points");
  Point mean{};
  for (const Point& p : points) {
    for (int k = 0; k < dim; ++k) mean[k] += p[k];
  }
  for (int k = 0; k < dim; ++k) mean[k] /= static_cast<double>(n);

  // Normal equations of |q|^2 = 2 c.q + k with q = p - mean.
  const int m = dim + 1;
  double a[4][5] = {};
  for (const Point& p : points) {
    double row[4] = {};
    double q2 = 0.0;
    for (int k = 0; k < dim; ++k) {
      const double q = p[k] - mean[k];
      row[k] = 2.0 * q;
      q2 += q * q;
    }
    row[dim] = 1.0;
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) a[i][j] += row[i] * row[j];
      a[i][m] += row[i] * q2;
    }
  }
  for (int col = 0; col < m; ++col) {
    int pivot = col;
    for (int r = col + 1; r < m; ++r) {
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    }
    if (a[pivot][col] == 0.0) throw std::invalid_argument("fit_ball: degenerate point set");
    for (int j = 0; j <= m; ++j) std::swap(a[col][j], a[pivot][j]);
    for (int r = 0; r < m; ++r) {
      if (r == col) continue;
      const double f = a[r][col] / a[col][col];
      for (int j = col; j <= m; ++j) a[r][j] -= f * a[col][j];
    }
  }
  BallFit fit;
  double c2 = 0.0;
  for (int k = 0; k < dim; ++k) {
    const double c = a[k][m] / a[k][k];
    fit.center[k] = mean[k] + c;
    c2 += c * c;
  }
  fit.radius = std::sqrt(std::max(a[dim][m] / a[dim][dim] + c2, 0.0));
  double ss = 0.0;
  for (const Point& p : points) {
    const double r = distance(p, fit.center, dim) - fit.radius;
    ss += r * r;
  }
  fit.rms = std::sqrt(ss / static_cast<double>(n));
  return fit;
}

const char* to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::not_applicable: return "not applicable";
  }
  return "unknown";
}

bool check_ball_bounds(RigidityReport& report, const RadialKernel& kernel, double diam, const RigidityOptions& options) {
  const int dim = report.dim;
  const double h = report.spacing;
  const double slack = options.bound_slack * h;
  report.eta = kernel.plateau_eta();
  report.sigma = kernel.sigma_level(diam);
  report.r_sigma = kernel.distribution(report.sigma);

  bool ok = true;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t i = 0; i < report.balls.size(); ++i) {
    auto& b = report.balls[i];
    b.radius_ok = b.radius > 0.5 * report.eta - slack;
    if (!b.radius_ok) {
      ok = false;
      report.reasons.push_back("ball " + std::to_string(i) + " radius " + detail::fmt(b.radius) +
                               " not above eta/2 = " + detail::fmt(0.5 * report.eta));
    }
    lo = std::min(lo, b.radius);
    hi = std::max(hi, b.radius);
  }
  report.radii_equal = report.balls.empty() || hi - lo <= options.radius_spread * h;
  if (!report.radii_equal) {
    ok = false;
    report.reasons.push_back("radii differ by " + detail::fmt(hi - lo));
  }
  report.gaps.clear();
  for (std::size_t i = 0; i < report.balls.size(); ++i) {
    for (std::size_t j = i + 1; j < report.balls.size(); ++j) {
      const auto& a = report.balls[i];
      const auto& b = report.balls[j];
      GapCheck g{i, j, distance(a.center, b.center, dim) - a.radius - b.radius, true};
      g.ok = g.gap >= report.r_sigma - slack;
      if (!g.ok) {
        ok = false;
        report.reasons.push_back("balls " + std::to_string(i) + " and " + std::to_string(j) + " at distance " +
                                 detail::fmt(g.gap) + " below r(sigma) = " + detail::fmt(report.r_sigma));
      }
      report.gaps.push_back(g);
    }
  }
  return ok;
}

RigidityReport extract_balls(const IndicatorGrid& set, const RadialKernel& kernel, const RigidityOptions& options) {
  if (set.empty()) throw std::invalid_argument("rigidity check on an empty set");
  if (kernel.dimension() != set.dimension()) throw std::invalid_argument("kernel and set dimensions differ");
  const int dim = set.dimension();
  const double h = set.spacing();
  const double vol = set.cell_volume();

  RigidityReport report;
  report.dim = dim;
  report.spacing = h;
  report.measure = measure(set);
  report.diameter = diameter(set);
  report.floor = rasterization_floor(set);
  report.eta = kernel.plateau_eta();
  report.sigma = kernel.sigma_level(report.diameter);
  report.r_sigma = kernel.distribution(report.sigma);

  auto not_applicable = [&](std::string why) {
    report.verdict = Verdict::not_applicable;
    report.reasons.push_back("not applicable: " + std::move(why));
    report.residual_measure = report.measure;
    return report;
  };

  report.integrable = kernel.improved_integrability().converges;
  if (!report.integrable) return not_applicable("kernel fails improved integrability");

  const MassField field(set, kernel);
  const CriticalityReport crit = criticality_report(field);
  report.criticality_mean = crit.mean;
  report.criticality_deviation = crit.max_deviation;
  const std::size_t pieces = connected_components(set).count();
  const double calibration_radius =
      std::pow(report.measure / (static_cast<double>(pieces) * unit_ball_volume(dim)), 1.0 / dim);
  report.calibration_deviation =
      criticality_report(from_balls({Point{}}, calibration_radius, h, dim), kernel).max_deviation;
  report.criticality_threshold = options.criticality_factor * report.calibration_deviation;
  if (crit.max_deviation > report.criticality_threshold) {
    return not_applicable("criticality deviation " + detail::fmt(crit.max_deviation) + " exceeds " +
                          detail::fmt(report.criticality_threshold));
  }

  report.nondegeneracy_floor = nondegeneracy_floor(set, kernel);
  if (options.check_nondegeneracy) {
    report.nondegeneracy = nondegeneracy_infimum(field, options.nondegeneracy).value;
    if (!(report.nondegeneracy > report.nondegeneracy_floor)) {
      return not_applicable("nondegeneracy infimum " + detail::fmt(report.nondegeneracy) + " at or below floor " +
                            detail::fmt(report.nondegeneracy_floor));
    }
  }

  const std::vector<Point> directions = fan_directions(dim);
  IndicatorGrid rest = set;
  bool failed = false;
  while (measure(rest) > report.floor && report.balls.size() < options.max_balls) {
    std::vector<FanEntry> fan;
    for (const Point& nu : directions) {
      SweepReport sweep = stopping_time(rest, nu, options.sweep);
      Decomposition dec = decompose(rest, sweep, kernel, options.sweep);
      FanEntry e{nu, std::move(sweep), std::move(dec), {}};
      const std::size_t n = e.decomposition.components.count();
      if (n == 1) {
        e.isolated = {0};
      } else if (n > 1) {
        e.isolated = classify_h_contact(e.decomposition, e.sweep, kernel).isolated();
      }
      const auto& cells = e.decomposition.components.cells;
      std::stable_sort(e.isolated.begin(), e.isolated.end(),
                       [&](std::size_t a, std::size_t b) { return cells[a].size() > cells[b].size(); });
      fan.push_back(std::move(e));
    }

    const FanEntry* source = nullptr;
    const std::vector<std::size_t>* component = nullptr;
    for (std::size_t k = 0; k < fan.size() && component == nullptr; ++k) {
      for (std::size_t id : fan[k].isolated) {
        const auto& cells = fan[k].decomposition.components.cells[id];
        if (consistent(fan, k, cells, report.floor, vol)) {
          source = &fan[k];
          component = &cells;
          break;
        }
      }
    }
    if (component == nullptr) {
      report.reasons.push_back("no h-isolated symmetric component is consistent across the direction fan");
      failed = true;
      break;
    }

    const IndicatorGrid piece = grid_from_cells(rest, *component);
    const BoundarySample rim = boundary_cells(piece);
    BallFit fit;
    try {
      fit = fit_ball(rim.points, dim);
    } catch (const std::invalid_argument&) {
      fit.rms = std::numeric_limits<double>::infinity();
    }
    if (!(fit.rms <= options.fit_rms * h)) {
      report.reasons.push_back("component of " + std::to_string(component->size()) + " cells near (" +
                               detail::fmt(fit.center[0]) + ", " + detail::fmt(fit.center[1]) +
                               ") fails the ball fit: rms " + detail::fmt(fit.rms));
      failed = true;
      break;
    }

    std::vector<std::uint8_t> chosen(rest.cell_count(), 0);
    for (std::size_t lin : *component) chosen[lin] = 1;
    std::vector<std::size_t> removed = *component;
    const auto extra = slivers(source->decomposition, chosen, report.floor);
    removed.insert(removed.end(), extra.begin(), extra.end());

    DetectedBall ball;
    ball.center = fit.center;
    ball.radius = fit.radius;
    ball.fit_rms = fit.rms;
    ball.cells = removed.size();
    ball.measure = static_cast<double>(removed.size()) * vol;
    ball.direction = source->direction;
    report.balls.push_back(ball);

    std::vector<std::uint8_t> left(rest.occupancy().begin(), rest.occupancy().end());
    for (std::size_t lin : removed) left[lin] = 0;
    rest = IndicatorGrid(dim, rest.dims(), rest.origin(), h, std::move(left));

    if (measure(rest) > report.floor) {
      const double dev = criticality_report(rest, kernel).max_deviation;
      report.remainder_deviation.push_back(dev);
      if (dev > report.criticality_threshold) {
        report.reasons.push_back("remainder after ball " + std::to_string(report.balls.size() - 1) +
                                 " is not h-critical: deviation " + detail::fmt(dev));
        failed = true;
        break;
      }
    }
  }
  report.residual_measure = measure(rest);

  if (!failed && report.residual_measure > report.floor) {
    report.reasons.push_back("residual measure " + detail::fmt(report.residual_measure) + " exceeds floor " +
                             detail::fmt(report.floor));
    failed = true;
  }
  const bool bounds = check_ball_bounds(report, kernel, report.diameter, options);
  report.verdict = !failed && bounds ? Verdict::pass : Verdict::fail;
  return report;
}

void write_rigidity_json(std::ostream& out, const RigidityReport& report) {
  using Json = nlohmann::ordered_json;
  auto point = [&](const Point& p) {
    Json a = Json::array();
    for (int k = 0; k < report.dim; ++k) a.push_back(p[k]);
    return a;
  };
  Json balls = Json::array();
  for (const auto& b : report.balls) {
    balls.push_back({{"center", point(b.center)},
                     {"radius", b.radius},
                     {"fit_rms", b.fit_rms},
                     {"measure", b.measure},
                     {"cells", b.cells},
                     {"direction", point(b.direction)},
                     {"radius_ok", b.radius_ok}});
  }
  Json gaps = Json::array();
  for (const auto& g : report.gaps) gaps.push_back({{"i", g.i}, {"j", g.j}, {"gap", g.gap}, {"ok", g.ok}});
  Json doc = {
      {"dim", report.dim},
      {"spacing", report.spacing},
      {"measure", report.measure},
      {"diameter", report.diameter},
      {"balls", balls},
      {"residual_measure", report.residual_measure},
      {"floor", report.floor},
      {"eta", report.eta},
      {"sigma", report.sigma},
      {"r_sigma", report.r_sigma},
      {"criticality",
       {{"mean", report.criticality_mean},
        {"deviation", report.criticality_deviation},
        {"calibration_deviation", report.calibration_deviation},
        {"threshold", report.criticality_threshold},
        {"remainder_deviation", report.remainder_deviation}}},
      {"nondegeneracy", {{"value", report.nondegeneracy}, {"floor", report.nondegeneracy_floor}}},
      {"integrable", report.integrable},
      {"checks", {{"radii_equal", report.radii_equal}, {"gaps", gaps}}},
      {"verdict", to_string(report.verdict)},
      {"reasons", report.reasons},
  };
  out << doc.dump(2) << '\n';
}

}  // namespace nlc
