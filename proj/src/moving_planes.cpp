#include "nlc/moving_planes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <ostream>
#include <stdexcept>

#include "format.hpp"
#include "nlc/curvature.hpp"
#include "nlc/parallel.hpp"

namespace nlc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <typename F>
void for_neighbours(const CellIndex& c, int dim, const F& f) {
  CellIndex q{};
  const std::int64_t r1 = dim > 1 ? 1 : 0;
  const std::int64_t r2 = dim > 2 ? 1 : 0;
  for (std::int64_t a = -1; a <= 1; ++a) {
    for (std::int64_t b = -r1; b <= r1; ++b) {
      for (std::int64_t e = -r2; e <= r2; ++e) {
        if (a == 0 && b == 0 && e == 0) continue;
        q = {c[0] + a, c[1] + b, c[2] + e};
        f(q);
      }
    }
  }
}

// Per-direction precomputation shared by every offset of one sweep.
class Sweeper {
 public:
  Sweeper(const IndicatorGrid& set, const Point& nu, const SweepOptions& options)
      : set_(set), plane_(nu, 0.0, set.dimension()), options_(options), binning_(plane_.normal(), set.spacing(), set.dimension()) {
    const int dim = set.dimension();
    limit_ = -kInf;
    for (std::size_t lin : set.occupied_cells()) limit_ = std::max(limit_, dot(set.center(lin), plane_.normal(), dim));
    limit_ += set.spacing();
    for (std::size_t lin : set.occupied_cells()) {
      Cell cell;
      cell.index = set.unravel(lin);
      cell.center = set.center(cell.index);
      cell.proj = dot(cell.center, plane_.normal(), dim);
      // Largest projection among neighbours that could leave Omega_t first.
      cell.interior = true;
      cell.neighbour_proj = cell.proj;
      for_neighbours(cell.index, dim, [&](const CellIndex& q) {
        if (!set.occupied(q)) cell.interior = false;
        cell.neighbour_proj = std::max(cell.neighbour_proj, dot(set.center(q), plane_.normal(), dim));
      });
      cells_.push_back(cell);
    }
    // Ascending projection, so Omega_t is always a prefix.
    std::stable_sort(cells_.begin(), cells_.end(), [](const Cell& a, const Cell& b) { return a.proj < b.proj; });
    parallel_for(cells_.size(), [&](std::size_t begin, std::size_t end) {
      for (std::size_t i = begin; i < end; ++i) {
        if (!cells_[i].interior) cells_[i].gaps = march(cells_[i].center);
      }
    });
    boundary_ = boundary_cells(set).points;
    touches_.assign(set.cell_count(), 0);
    for (std::size_t lin = 0; lin < set.cell_count(); ++lin) {
      bool t = !set.occupied(lin);
      if (!t) for_neighbours(set.unravel(lin), dim, [&](const CellIndex& q) { t = t || !set.occupied(q); });
      touches_[lin] = t ? 1 : 0;
    }
  }

  const Hyperplane& plane() const { return plane_; }

  double min_proj() const { return cells_.front().proj; }
  double max_proj() const { return cells_.back().proj; }

  InclusionResult inclusion(double t, std::vector<CellIndex>* reflected) const {
    const int dim = set_.dimension();
    const double h = set_.spacing();
    const double vol = set_.cell_volume();
    const Hyperplane ht = plane_.shifted_to(t);
    InclusionResult out;
    std::size_t clipped = 0;
    std::size_t layer = 0;
    CellIndex lo{};
    CellIndex hi{};
    for (int k = 0; k < 3; ++k) {
      lo[k] = std::numeric_limits<std::int64_t>::max();
      hi[k] = std::numeric_limits<std::int64_t>::min();
    }
    for (const auto& c : cells_) {
      if (c.proj - t > 0.0) break;
      ++clipped;
      if (!c.interior || c.neighbour_proj - t > 0.0) ++layer;
      const CellIndex m = set_.locate(ht.mirror(c.center));
      for (int k = 0; k < dim; ++k) {
        lo[k] = std::min(lo[k], m[k] - 1);
        hi[k] = std::max(hi[k], m[k] + 1);
      }
    }
    out.clipped_measure = static_cast<double>(clipped) * vol;
    if (clipped == 0) return out;
    for (int k = dim; k < 3; ++k) lo[k] = hi[k] = 0;
    std::size_t excess = 0;
    CellIndex q{};
    for (q[0] = lo[0]; q[0] <= hi[0]; ++q[0]) {
      for (q[1] = lo[1]; q[1] <= hi[1]; ++q[1]) {
        for (q[2] = lo[2]; q[2] <= hi[2]; ++q[2]) {
          const Point p = set_.center(q);
          if (!(ht.signed_distance(p) > 0.0)) continue;
          const CellIndex src = set_.locate(ht.mirror(p));
          if (!set_.occupied(src) || ht.signed_distance(set_.center(src)) > 0.0) continue;
          if (!set_.occupied(q)) ++excess;
          if (reflected) reflected->push_back(q);
        }
      }
    }
    out.excess_measure = static_cast<double>(excess) * vol;
    out.tolerance = options_.inclusion_tol > 0.0 ? options_.inclusion_tol * out.clipped_measure
                                                 : options_.inclusion_layers * static_cast<double>(layer) * vol;
    // R_t mirrors Omega_t, so Steiner symmetry of the union reduces to every
    // boundary segment of Omega_t running to H_t inside Omega.
    const double ds = 0.5 * h;
    for (const auto& c : cells_) {
      if (c.proj - t > 0.0) break;
      if (c.interior) continue;
      ++out.steiner.cells_tested;
      const auto uncovered = static_cast<double>(std::upper_bound(c.gaps.begin(), c.gaps.end(), t) - c.gaps.begin()) * ds;
      out.steiner.max_defect = std::max(out.steiner.max_defect, uncovered);
      if (uncovered > options_.steiner_tol * h) {
        out.steiner.symmetric = false;
        out.steiner.violating_measure += vol;
      }
    }
    out.holds = out.excess_measure <= out.tolerance && out.steiner.symmetric;
    return out;
  }

  std::vector<Point> away(double t, const std::vector<CellIndex>& reflected) const {
    const Hyperplane ht = plane_.shifted_to(t);
    const double slab = options_.away_slab * set_.spacing();
    std::vector<Point> out;
    for (const auto& q : reflected) {
      const Point p = set_.center(q);
      if (!(ht.signed_distance(p) > slab)) continue;
      if (!set_.contains(q) || touches_[set_.linear(q)]) out.push_back(p);
    }
    return out;
  }

  std::vector<Point> close(double t) const {
    const Hyperplane ht = plane_.shifted_to(t);
    const double slab = options_.close_slab * set_.spacing();
    std::map<std::array<std::int64_t, 2>, std::pair<std::size_t, Point>> lines;
    for (const Point& p : boundary_) {
      const double s = ht.signed_distance(p);
      if (!(s > 0.0 && s <= slab)) continue;
      auto [it, fresh] = lines.try_emplace(binning_.key(p), 0, p);
      ++it->second.first;
    }
    std::vector<Point> out;
    const Point& nu = plane_.normal();
    for (const auto& [key, entry] : lines) {
      if (entry.first < 2) continue;
      const double s = ht.signed_distance(entry.second);
      out.push_back({entry.second[0] - s * nu[0], entry.second[1] - s * nu[1], entry.second[2] - s * nu[2]});
    }
    return out;
  }

 private:
  struct Cell {
    CellIndex index{};
    Point center{};
    double proj = 0.0;
    double neighbour_proj = 0.0;
    bool interior = true;
    // Projections of the uncovered samples met marching from the centre along +nu.
    std::vector<double> gaps;
  };

  std::vector<double> march(const Point& from) const {
    const int dim = set_.dimension();
    const Point& nu = plane_.normal();
    const double ds = 0.5 * set_.spacing();
    const double start = dot(from, nu, dim);
    std::vector<double> gaps;
    for (double u = ds; start + u <= limit_; u += ds) {
      Point p = from;
      for (int k = 0; k < dim; ++k) p[k] += u * nu[k];
      if (!filled_near(set_, p)) gaps.push_back(start + u);
    }
    return gaps;
  }

  const IndicatorGrid& set_;
  Hyperplane plane_;
  SweepOptions options_;
  LineBinning binning_;
  std::vector<Cell> cells_;
  std::vector<Point> boundary_;
  // Empty, or occupied with an empty 3^d neighbour.
  std::vector<std::uint8_t> touches_;
  double limit_ = 0.0;
};

// Cells of a component that touch anything outside it.
std::vector<Point> rim(const IndicatorGrid& grid, const std::vector<std::size_t>& cells, const std::vector<std::int32_t>& label,
                       std::int32_t id) {
  std::vector<Point> out;
  for (std::size_t lin : cells) {
    const CellIndex c = grid.unravel(lin);
    bool edge = false;
    for_neighbours(c, grid.dimension(), [&](const CellIndex& q) {
      edge = edge || !grid.contains(q) || label[grid.linear(q)] != id;
    });
    if (edge) out.push_back(grid.center(c));
  }
  return out;
}

}  // namespace

const char* to_string(SweepStatus status) {
  switch (status) {
    case SweepStatus::stopped: return "stopped";
    case SweepStatus::degenerate_start: return "degenerate start";
    case SweepStatus::symmetric_to_end: return "symmetric to end";
  }
  return "unknown";
}

InclusionResult symmetric_inclusion(const IndicatorGrid& set, const Point& nu, double t, const SweepOptions& options) {
  return Sweeper(set, nu, options).inclusion(t, nullptr);
}

std::vector<Point> find_away_contacts(const IndicatorGrid& set, const Point& nu, double t, const SweepOptions& options) {
  const Sweeper sweeper(set, nu, options);
  std::vector<CellIndex> reflected;
  sweeper.inclusion(t, &reflected);
  return sweeper.away(t, reflected);
}

std::vector<Point> find_close_contacts(const IndicatorGrid& set, const Point& nu, double t, const SweepOptions& options) {
  return Sweeper(set, nu, options).close(t);
}

SweepReport stopping_time(const IndicatorGrid& set, const Point& nu, const SweepOptions& options) {
  if (set.empty()) throw std::invalid_argument("moving planes on an empty set");
  const Sweeper sweeper(set, nu, options);
  const double h = set.spacing();
  const double step = options.step > 0.0 ? options.step : h;
  if (step > h * (1.0 + 1e-12)) throw std::invalid_argument("sweep step must not exceed the grid spacing");

  SweepReport report;
  report.dim = set.dimension();
  report.direction = sweeper.plane().normal();
  report.start = sweeper.min_proj() - h;
  report.end = sweeper.max_proj() + h;

  auto sample = [&](double t) {
    std::vector<CellIndex> reflected;
    const InclusionResult inc = sweeper.inclusion(t, &reflected);
    SweepSample s;
    s.t = t;
    s.inclusion = inc.holds;
    s.excess_measure = inc.excess_measure;
    s.away_count = sweeper.away(t, reflected).size();
    s.close_count = sweeper.close(t).size();
    return s;
  };
  auto test = [&](double t) {
    report.samples.push_back(sample(t));
    return report.samples.back().inclusion;
  };

  test(report.start);
  double good = report.start;
  double bad = kInf;
  // Offsets are evaluated in parallel blocks; samples past the first failure
  // are dropped so the report does not depend on the block size.
  const auto total = static_cast<std::size_t>(std::floor((report.end - report.start) / step));
  const std::size_t block = 2 * static_cast<std::size_t>(thread_count());
  for (std::size_t first = 1; first <= total && bad == kInf; first += block) {
    const std::size_t count = std::min(block, total + 1 - first);
    std::vector<SweepSample> batch(count);
    parallel_for(count, [&](std::size_t begin, std::size_t end) {
      for (std::size_t i = begin; i < end; ++i) batch[i] = sample(report.start + static_cast<double>(first + i) * step);
    });
    for (const auto& s : batch) {
      report.samples.push_back(s);
      if (!s.inclusion) {
        bad = s.t;
        break;
      }
      good = s.t;
    }
  }
  if (bad == kInf) {
    report.status = SweepStatus::symmetric_to_end;
  } else if (good == report.start) {
    report.status = SweepStatus::degenerate_start;
  } else {
    for (int r = 0; r < options.refinements; ++r) {
      const double mid = 0.5 * (good + bad);
      (test(mid) ? good : bad) = mid;
    }
  }
  report.T = good;
  std::sort(report.samples.begin(), report.samples.end(), [](const SweepSample& a, const SweepSample& b) { return a.t < b.t; });

  std::vector<CellIndex> reflected;
  sweeper.inclusion(report.T, &reflected);
  report.away_contacts = sweeper.away(report.T, reflected);
  report.close_contacts = sweeper.close(report.T);
  report.first_away = std::numeric_limits<double>::quiet_NaN();
  for (const auto& s : report.samples) {
    if (s.away_count > 0) {
      report.first_away = s.t;
      break;
    }
  }
  return report;
}

Decomposition decompose(const IndicatorGrid& set, const SweepReport& report, const RadialKernel& kernel,
                        const SweepOptions& options) {
  const int dim = set.dimension();
  const double h = set.spacing();
  const Hyperplane ht(report.direction, report.T, dim);
  const LineBinning binning(ht.normal(), h, dim);
  using Key = std::array<std::int64_t, 2>;

  // Far end of R_T on each nu-line. The contact cells alone are too sparse on
  // rotated lattices to mark every line.
  std::vector<CellIndex> reflected;
  Sweeper(set, report.direction, options).inclusion(report.T, &reflected);
  std::map<Key, double> reach;
  for (const CellIndex& q : reflected) {
    const Point p = set.center(q);
    auto [it, fresh] = reach.try_emplace(binning.key(p), 0.0);
    it->second = std::max(it->second, ht.signed_distance(p));
  }
  // A line missed between two covered neighbours inherits the smaller reach.
  std::map<Key, double> filled = reach;
  for (const auto& [key, value] : reach) {
    for (int axis = 0; axis < dim - 1; ++axis) {
      Key gap = key;
      gap[axis] += 1;
      Key beyond = key;
      beyond[axis] += 2;
      if (reach.count(gap) || !reach.count(beyond)) continue;
      auto& slot = filled.try_emplace(gap, 0.0).first->second;
      slot = std::max(slot, std::min(value, reach.at(beyond)));
    }
  }

  std::vector<std::uint8_t> sym(set.cell_count(), 0);
  std::vector<std::uint8_t> rest(set.cell_count(), 0);
  for (std::size_t lin : set.occupied_cells()) {
    const Point c = set.center(lin);
    const auto it = filled.find(binning.key(c));
    const bool on_segment = it != filled.end() && std::abs(ht.signed_distance(c)) <= it->second + h;
    (on_segment ? sym : rest)[lin] = 1;
  }
  Decomposition out{IndicatorGrid(dim, set.dims(), set.origin(), h, std::move(sym)),
                    IndicatorGrid(dim, set.dims(), set.origin(), h, std::move(rest)),
                    {},
                    {},
                    {},
                    0.0,
                    report.away_contacts.empty()};
  out.components = connected_components(out.symmetric);
  out.r_sigma = kernel.distribution(kernel.sigma_level(diameter(set)));

  const Components ns = connected_components(out.nonsymmetric);
  const double negligible = 0.1 * rasterization_floor(set);
  std::vector<std::vector<Point>> ns_rims;
  for (std::size_t j = 0; j < ns.count(); ++j) {
    if (static_cast<double>(ns.cells[j].size()) * set.cell_volume() <= negligible) continue;
    ns_rims.push_back(rim(set, ns.cells[j], ns.label, static_cast<std::int32_t>(j)));
  }
  for (std::size_t i = 0; i < out.components.count(); ++i) {
    const auto own = rim(set, out.components.cells[i], out.components.label, static_cast<std::int32_t>(i));
    double best = kInf;
    for (const auto& other : ns_rims) {
      for (const Point& a : own) {
        for (const Point& b : other) best = std::min(best, distance(a, b, dim));
      }
    }
    out.separation.push_back(best);
    out.separation_violated.push_back(best < out.r_sigma - 2.0 * h);
  }
  return out;
}

std::vector<std::size_t> ContactGraph::isolated() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < n; ++i) {
    bool any = false;
    for (std::size_t j = 0; j < n; ++j) any = any || (i != j && edge(i, j));
    if (!any) out.push_back(i);
  }
  return out;
}

ContactGraph classify_h_contact(const Decomposition& decomposition, const SweepReport& report,
                                const RadialKernel& kernel) {
  const IndicatorGrid& grid = decomposition.symmetric;
  const int dim = grid.dimension();
  const Components& comps = decomposition.components;
  ContactGraph graph;
  graph.n = comps.count();
  graph.adjacency.assign(graph.n * graph.n, 0);
  if (graph.n < 2) return graph;

  // Assign each contact to the component it lies in or touches.
  const Hyperplane ht(report.direction, report.T, dim);
  std::vector<std::vector<std::pair<Point, Point>>> pairs(graph.n);
  for (const Point& p : report.away_contacts) {
    const CellIndex c = grid.locate(p);
    std::int32_t id = grid.contains(c) ? comps.label[grid.linear(c)] : -1;
    if (id < 0) {
      for_neighbours(c, dim, [&](const CellIndex& q) {
        if (id < 0 && grid.contains(q)) id = comps.label[grid.linear(q)];
      });
    }
    if (id >= 0) pairs[static_cast<std::size_t>(id)].emplace_back(p, ht.mirror(p));
  }

  const double reach = kernel.support_radius();
  for (std::size_t j = 0; j < graph.n; ++j) {
    const IndicatorGrid part = grid_from_cells(grid, comps.cells[j]);
    const MassField field(part, kernel);
    Point lo{};
    Point hi{};
    for (int k = 0; k < dim; ++k) {
      lo[k] = kInf;
      hi[k] = -kInf;
    }
    for (std::size_t lin : comps.cells[j]) {
      const Point c = grid.center(lin);
      for (int k = 0; k < dim; ++k) {
        lo[k] = std::min(lo[k], c[k]);
        hi[k] = std::max(hi[k], c[k]);
      }
    }
    auto gap = [&](const Point& p) {
      double s = 0.0;
      for (int k = 0; k < dim; ++k) {
        const double d = std::max({lo[k] - p[k], 0.0, p[k] - hi[k]});
        s += d * d;
      }
      return std::sqrt(s);
    };
    for (std::size_t i = 0; i < graph.n; ++i) {
      if (i == j) continue;
      for (const auto& [p, q] : pairs[i]) {
        if (gap(p) >= reach && gap(q) >= reach) continue;
        if (field.deviation_direct(p, q) > 0.0) {
          graph.adjacency[i * graph.n + j] = 1;
          break;
        }
      }
    }
  }
  for (std::size_t i = 0; i < graph.n; ++i) {
    for (std::size_t j = i + 1; j < graph.n; ++j) {
      const std::uint8_t e = graph.adjacency[i * graph.n + j] | graph.adjacency[j * graph.n + i];
      graph.adjacency[i * graph.n + j] = graph.adjacency[j * graph.n + i] = e;
    }
  }
  return graph;
}

void write_sweep_csv(std::ostream& out, const SweepReport& report) {
  out << "t,inclusion,excess_measure,away_count,close_count\n";
  for (const auto& s : report.samples) {
    out << detail::fmt(s.t) << ',' << (s.inclusion ? 1 : 0) << ',' << detail::fmt(s.excess_measure) << ','
        << s.away_count << ',' << s.close_count << '\n';
  }
  out << "T," << detail::fmt(report.T) << '\n';
}

}  // namespace nlc
