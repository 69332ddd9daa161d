#include "nlc/curvature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <random>
#include <stdexcept>
#include <utility>

#include "ball_count.hpp"
#include "format.hpp"
#include "nlc/parallel.hpp"
#include "nlc/simd/kernels.hpp"

namespace nlc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double dist_sq(const Point& a, const Point& b, int dim) {
  // Same operation order as the dense kernels.
  const double dx = a[0] - b[0];
  double s = dx * dx;
  if (dim > 1) {
    const double dy = a[1] - b[1];
    s = s + dy * dy;
  }
  if (dim > 2) {
    const double dz = a[2] - b[2];
    s = s + dz * dz;
  }
  return s;
}

}  // namespace

// Occupied cells whose contribution is handled analytically: the cells
// containing the evaluation points (unbounded profiles only).
struct MassField::Excluded {
  std::ptrdiff_t a = -1;
  std::ptrdiff_t b = -1;

  // Distinct excluded indices, ascending.
  std::vector<std::size_t> list() const {
    std::vector<std::size_t> out;
    if (a >= 0) out.push_back(static_cast<std::size_t>(a));
    if (b >= 0 && b != a) out.push_back(static_cast<std::size_t>(b));
    std::sort(out.begin(), out.end());
    return out;
  }
};

MassField::MassField(const IndicatorGrid& set, const RadialKernel& kernel, MassOptions options)
    : set_(set), kernel_(kernel), options_(options) {
  if (kernel.dimension() != set.dimension()) {
    throw std::invalid_argument("kernel dimension does not match the set dimension");
  }
  const int dim = set.dimension();
  cells_ = set.occupied_cells();
  xs_.reserve(cells_.size());
  if (dim > 1) ys_.reserve(cells_.size());
  if (dim > 2) zs_.reserve(cells_.size());
  for (int k = 0; k < 3; ++k) {
    box_lo_[k] = kInf;
    box_hi_[k] = -kInf;
  }
  for (std::size_t i : cells_) {
    const Point c = set.center(i);
    xs_.push_back(c[0]);
    if (dim > 1) ys_.push_back(c[1]);
    if (dim > 2) zs_.push_back(c[2]);
    for (int k = 0; k < dim; ++k) {
      box_lo_[k] = std::min(box_lo_[k], c[k]);
      box_hi_[k] = std::max(box_hi_[k], c[k]);
    }
  }
  for (double r : kernel.radii()) radii_sq_.push_back(r * r);
  values_.assign(kernel.levels().begin(), kernel.levels().end());
  vol_ = set.cell_volume();
  if (!cells_.empty()) {
    diam_ = nlc::diameter(set);
    sigma_ = diam_ > 0.0 ? kernel.sigma_level(diam_) : kernel.eval(0.0);
  }
  shell_ = kernel.bounded() ? 0.0 : kernel.ball_mass(0.5 * set.spacing());
  counts_ = std::make_unique<detail::LineCounts>(set);
}

MassField::~MassField() = default;
MassField::MassField(MassField&&) noexcept = default;
MassField& MassField::operator=(MassField&&) noexcept = default;

MassField::Excluded MassField::self_cells(const Point& a, const Point& b) const {
  Excluded ex;
  if (kernel_.bounded()) return ex;
  auto find = [&](const Point& p) -> std::ptrdiff_t {
    const CellIndex c = set_.locate(p);
    if (!set_.occupied(c)) return -1;
    const auto it = std::lower_bound(cells_.begin(), cells_.end(), set_.linear(c));
    return it - cells_.begin();
  };
  ex.a = find(a);
  ex.b = find(b);
  return ex;
}

double MassField::nearest_other(const Point& x, const Excluded& ex) const {
  // Cells outside the 3^d block around x's cell are at least 1.5 h away.
  const int dim = set_.dimension();
  const double h = set_.spacing();
  double best = 1.5 * h;
  const CellIndex c = set_.locate(x);
  const auto skip = ex.list();
  CellIndex q{};
  CellIndex lo{};
  CellIndex hi{};
  for (int k = 0; k < 3; ++k) {
    lo[k] = k < dim ? c[k] - 1 : 0;
    hi[k] = k < dim ? c[k] + 1 : 0;
  }
  for (q[0] = lo[0]; q[0] <= hi[0]; ++q[0]) {
    for (q[1] = lo[1]; q[1] <= hi[1]; ++q[1]) {
      for (q[2] = lo[2]; q[2] <= hi[2]; ++q[2]) {
        if (!set_.occupied(q)) continue;
        const std::size_t lin = set_.linear(q);
        bool excluded = false;
        for (std::size_t s : skip) excluded = excluded || cells_[s] == lin;
        if (excluded) continue;
        best = std::min(best, std::sqrt(dist_sq(set_.center(q), x, dim)));
      }
    }
  }
  return best;
}

double MassField::power_direct_sum(const Point& x, const Excluded& ex) const {
  const simd::CloudView cloud{xs_.data(), ys_.empty() ? nullptr : ys_.data(), zs_.empty() ? nullptr : zs_.data(),
                              cells_.size(), set_.dimension()};
  double sum = 0.0;
  std::size_t begin = 0;
  for (std::size_t e : ex.list()) {
    sum += simd::sum_power(cloud.slice(begin, e), x, kernel_.exponent(), kInf);
    begin = e + 1;
  }
  sum += simd::sum_power(cloud.slice(begin, cells_.size()), x, kernel_.exponent(), kInf);
  return sum;
}

double MassField::self_terms(const Point& a, const Point& b, const Excluded& ex) const {
  if (ex.a == ex.b) return 0.0;
  const int dim = set_.dimension();
  double sum = 0.0;
  // A self cell contributes its shell mass for its own point and a midpoint
  // value for the other one.
  if (ex.a >= 0) {
    const Point c = set_.center(cells_[static_cast<std::size_t>(ex.a)]);
    sum += std::abs(shell_ - kernel_.eval(std::sqrt(dist_sq(c, b, dim))) * vol_);
  }
  if (ex.b >= 0) {
    const Point c = set_.center(cells_[static_cast<std::size_t>(ex.b)]);
    sum += std::abs(kernel_.eval(std::sqrt(dist_sq(c, a, dim))) * vol_ - shell_);
  }
  return sum;
}

double MassField::direct(const Point& x) const {
  if (cells_.empty()) return 0.0;
  const simd::CloudView cloud{xs_.data(), ys_.empty() ? nullptr : ys_.data(), zs_.empty() ? nullptr : zs_.data(),
                              cells_.size(), set_.dimension()};
  if (kernel_.bounded()) return simd::sum_piecewise(cloud, x, {radii_sq_, values_}) * vol_;
  const Excluded ex = self_cells(x, x);
  return power_direct_sum(x, ex) * vol_ + (ex.a >= 0 ? shell_ : 0.0);
}

double MassField::layer_cake(const Point& x) const {
  if (cells_.empty()) return 0.0;
  const int dim = set_.dimension();
  const auto n = static_cast<double>(cells_.size());
  // Whether every occupied centre lies in the open ball: test the farthest
  // corner of the centres' bounding box.
  auto covers = [&](const Point& p, double r_sq) {
    double far = 0.0;
    for (int k = 0; k < dim; ++k) {
      const double d = std::max(std::abs(box_lo_[k] - p[k]), std::abs(box_hi_[k] - p[k]));
      far += d * d;
    }
    return far < r_sq * (1.0 - 1e-12);
  };
  if (kernel_.bounded()) {
    double total = sigma_ > 0.0 ? sigma_ * n * vol_ : 0.0;
    for (std::size_t k = 0; k < values_.size(); ++k) {
      const double below = k + 1 < values_.size() ? values_[k + 1] : 0.0;
      const double width = values_[k] - std::max(below, sigma_);
      if (!(width > 0.0)) continue;
      const double count = covers(x, radii_sq_[k]) ? n : static_cast<double>(counts_->ball(x, radii_sq_[k]));
      total += width * count * vol_;
    }
    return total;
  }
  const Excluded ex = self_cells(x, x);
  const auto skip = ex.list();
  const double others = n - static_cast<double>(skip.size());
  double total = ex.a >= 0 ? shell_ : 0.0;
  if (others <= 0.0) return total;
  if (!std::isfinite(sigma_)) throw std::runtime_error("layer-cake level integral diverges (zero diameter)");
  total += sigma_ * others * vol_;
  // Above s_hi every level ball holds at most the excluded cell.
  const double s_lo = sigma_;
  const double s_hi = kernel_.eval(nearest_other(x, ex));
  if (!(s_hi > s_lo)) return total;
  const int panels = options_.power_panels;
  const double ratio = s_hi / s_lo;
  double prev = s_lo;
  for (int i = 1; i <= panels; ++i) {
    const double next = i == panels ? s_hi : s_lo * std::pow(ratio, static_cast<double>(i) / panels);
    const double r = kernel_.distribution(0.5 * (prev + next));
    const double r_sq = r * r;
    double count = static_cast<double>(counts_->ball(x, r_sq));
    for (std::size_t e : skip) count -= dist_sq(set_.center(cells_[e]), x, dim) < r_sq ? 1.0 : 0.0;
    total += count * vol_ * (next - prev);
    prev = next;
  }
  return total;
}

double MassField::deviation(const Point& a, const Point& b) const {
  if (cells_.empty() || a == b) return 0.0;
  const int dim = set_.dimension();
  auto covers_both = [&](double r_sq) {
    double fa = 0.0;
    double fb = 0.0;
    for (int k = 0; k < dim; ++k) {
      const double da = std::max(std::abs(box_lo_[k] - a[k]), std::abs(box_hi_[k] - a[k]));
      const double db = std::max(std::abs(box_lo_[k] - b[k]), std::abs(box_hi_[k] - b[k]));
      fa += da * da;
      fb += db * db;
    }
    return std::max(fa, fb) < r_sq * (1.0 - 1e-12);
  };
  if (kernel_.bounded()) {
    double total = 0.0;
    for (std::size_t k = 0; k < values_.size(); ++k) {
      const double below = k + 1 < values_.size() ? values_[k + 1] : 0.0;
      const double width = values_[k] - std::max(below, sigma_);
      if (!(width > 0.0) || covers_both(radii_sq_[k])) continue;
      total += width * static_cast<double>(counts_->symmetric_difference(a, b, radii_sq_[k])) * vol_;
    }
    return total;
  }
  const Excluded ex = self_cells(a, b);
  const auto skip = ex.list();
  double total = self_terms(a, b, ex);
  if (static_cast<double>(cells_.size()) - static_cast<double>(skip.size()) <= 0.0) return total;
  const double s_lo = sigma_;
  const double s_hi = std::max(kernel_.eval(nearest_other(a, ex)), kernel_.eval(nearest_other(b, ex)));
  if (!(s_hi > s_lo)) return total;
  const int panels = options_.power_panels;
  const double ratio = s_hi / s_lo;
  double prev = s_lo;
  for (int i = 1; i <= panels; ++i) {
    const double next = i == panels ? s_hi : s_lo * std::pow(ratio, static_cast<double>(i) / panels);
    const double r = kernel_.distribution(0.5 * (prev + next));
    const double r_sq = r * r;
    double count = static_cast<double>(counts_->symmetric_difference(a, b, r_sq));
    for (std::size_t e : skip) {
      const Point c = set_.center(cells_[e]);
      const bool in_a = dist_sq(c, a, dim) < r_sq;
      const bool in_b = dist_sq(c, b, dim) < r_sq;
      count -= in_a != in_b ? 1.0 : 0.0;
    }
    total += count * vol_ * (next - prev);
    prev = next;
  }
  return total;
}

double MassField::deviation_direct(const Point& a, const Point& b) const {
  if (cells_.empty() || a == b) return 0.0;
  const simd::CloudView cloud{xs_.data(), ys_.empty() ? nullptr : ys_.data(), zs_.empty() ? nullptr : zs_.data(),
                              cells_.size(), set_.dimension()};
  if (kernel_.bounded()) return simd::sum_abs_diff_piecewise(cloud, a, b, {radii_sq_, values_}) * vol_;
  const Excluded ex = self_cells(a, b);
  double sum = 0.0;
  std::size_t begin = 0;
  for (std::size_t e : ex.list()) {
    sum += simd::sum_abs_diff_power(cloud.slice(begin, e), a, b, kernel_.exponent());
    begin = e + 1;
  }
  sum += simd::sum_abs_diff_power(cloud.slice(begin, cells_.size()), a, b, kernel_.exponent());
  return sum * vol_ + self_terms(a, b, ex);
}

double local_mass_direct(const IndicatorGrid& set, const Point& x, const RadialKernel& kernel) {
  return MassField(set, kernel).direct(x);
}

double local_mass_layercake(const IndicatorGrid& set, const Point& x, const RadialKernel& kernel,
                            MassOptions options) {
  return MassField(set, kernel, options).layer_cake(x);
}

double pair_deviation(const IndicatorGrid& set, const Point& a, const Point& b, const RadialKernel& kernel) {
  return MassField(set, kernel).deviation(a, b);
}

double pair_deviation_direct(const IndicatorGrid& set, const Point& a, const Point& b, const RadialKernel& kernel) {
  return MassField(set, kernel).deviation_direct(a, b);
}

// -------------------------------------------------------------- criticality

CriticalityReport criticality_report(const MassField& field, MassRoute route) {
  const BoundarySample sample = essential_boundary(field.set());
  CriticalityReport report;
  report.dim = field.set().dimension();
  report.points = sample.points;
  report.values.assign(sample.size(), 0.0);
  parallel_for(sample.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      report.values[i] = route == MassRoute::direct ? field.direct(sample.points[i]) : field.layer_cake(sample.points[i]);
    }
  });
  double sum = 0.0;
  for (double v : report.values) sum += v;
  report.mean = sum / static_cast<double>(report.values.size());
  for (double v : report.values) {
    report.max_deviation = std::max(report.max_deviation, std::abs(v - report.mean) / report.mean);
  }
  return report;
}

CriticalityReport criticality_report(const IndicatorGrid& set, const RadialKernel& kernel, MassRoute route) {
  return criticality_report(MassField(set, kernel), route);
}

// ----------------------------------------------------------- nondegeneracy

namespace {

using PairList = std::vector<std::pair<std::uint32_t, std::uint32_t>>;

// Nearest other sample of every sample (ties: lowest index).
PairList nearest_neighbour_pairs(const IndicatorGrid& set, const BoundarySample& sample) {
  const int dim = set.dimension();
  const std::size_t n = sample.size();
  std::vector<std::int32_t> owner(set.cell_count(), -1);
  for (std::size_t i = 0; i < n; ++i) owner[sample.cells[i]] = static_cast<std::int32_t>(i);
  PairList pairs;
  pairs.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const CellIndex c = set.unravel(sample.cells[i]);
    double best = kInf;
    std::size_t arg = n;
    for (std::int64_t ring = 1; ring <= 3 && arg == n; ++ring) {
      CellIndex lo{};
      CellIndex hi{};
      for (int k = 0; k < 3; ++k) {
        lo[k] = k < dim ? c[k] - ring : 0;
        hi[k] = k < dim ? c[k] + ring : 0;
      }
      CellIndex q{};
      for (q[0] = lo[0]; q[0] <= hi[0]; ++q[0]) {
        for (q[1] = lo[1]; q[1] <= hi[1]; ++q[1]) {
          for (q[2] = lo[2]; q[2] <= hi[2]; ++q[2]) {
            if (!set.contains(q)) continue;
            const std::int32_t j = owner[set.linear(q)];
            if (j < 0 || static_cast<std::size_t>(j) == i) continue;
            const double d = dist_sq(sample.points[i], sample.points[static_cast<std::size_t>(j)], dim);
            if (d < best || (d == best && static_cast<std::size_t>(j) < arg)) {
              best = d;
              arg = static_cast<std::size_t>(j);
            }
          }
        }
      }
    }
    if (arg == n) {
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        const double d = dist_sq(sample.points[i], sample.points[j], dim);
        if (d < best) {
          best = d;
          arg = j;
        }
      }
    }
    if (arg < n) pairs.emplace_back(static_cast<std::uint32_t>(std::min(i, arg)), static_cast<std::uint32_t>(std::max(i, arg)));
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  return pairs;
}

}  // namespace

NondegeneracyResult nondegeneracy_infimum(const MassField& field, const NondegeneracyOptions& options) {
  const IndicatorGrid& set = field.set();
  const int dim = set.dimension();
  const BoundarySample sample = essential_boundary(set);
  const std::size_t n = sample.size();
  if (n < 2) throw std::invalid_argument("nondegeneracy needs at least two boundary samples");

  NondegeneracyResult result;
  result.dim = dim;
  PairList pairs;
  if (n * n <= options.pair_budget) {
    result.exhaustive = true;
    pairs.reserve(n * (n - 1) / 2);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j));
    }
  } else {
    pairs = nearest_neighbour_pairs(set, sample);
    const int strata = std::max(1, options.strata);
    const std::size_t remaining = options.pair_budget > pairs.size() ? options.pair_budget - pairs.size() : 0;
    const std::size_t quota = remaining / static_cast<std::size_t>(strata);
    const double span = field.diameter() + 3.0 * set.spacing();
    std::vector<std::size_t> filled(static_cast<std::size_t>(strata), 0);
    std::size_t open = quota > 0 ? static_cast<std::size_t>(strata) : 0;
    std::mt19937_64 rng(options.seed);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    const std::size_t max_draws = 20 * remaining;
    for (std::size_t draw = 0; draw < max_draws && open > 0; ++draw) {
      const std::size_t i = pick(rng);
      const std::size_t j = pick(rng);
      if (i == j) continue;
      const double d = std::sqrt(dist_sq(sample.points[i], sample.points[j], dim));
      const auto s = std::min(static_cast<std::size_t>(d / span * strata), static_cast<std::size_t>(strata - 1));
      if (filled[s] >= quota) continue;
      if (++filled[s] == quota) --open;
      pairs.emplace_back(static_cast<std::uint32_t>(std::min(i, j)), static_cast<std::uint32_t>(std::max(i, j)));
    }
  }

  std::vector<double> quotient(pairs.size(), 0.0);
  parallel_for(pairs.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k) {
      const Point& a = sample.points[pairs[k].first];
      const Point& b = sample.points[pairs[k].second];
      quotient[k] = field.deviation(a, b) / distance(a, b, dim);
    }
  });

  result.pairs_evaluated = pairs.size();
  result.value = kInf;
  result.per_sample.assign(n, PairQuotient{});
  std::vector<bool> seen(n, false);
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const auto [i, j] = pairs[k];
    const PairQuotient pq{sample.points[i], sample.points[j], distance(sample.points[i], sample.points[j], dim), quotient[k]};
    if (quotient[k] < result.value) {
      result.value = quotient[k];
      result.minimizer = pq;
    }
    for (std::size_t s : {static_cast<std::size_t>(i), static_cast<std::size_t>(j)}) {
      if (!seen[s] || quotient[k] < result.per_sample[s].quotient) {
        seen[s] = true;
        result.per_sample[s] = pq;
      }
    }
  }
  // Samples that took part in no pair have nothing to report.
  std::vector<PairQuotient> kept;
  for (std::size_t s = 0; s < n; ++s) {
    if (seen[s]) kept.push_back(result.per_sample[s]);
  }
  result.per_sample = std::move(kept);
  return result;
}

NondegeneracyResult nondegeneracy_infimum(const IndicatorGrid& set, const RadialKernel& kernel,
                                          const NondegeneracyOptions& options) {
  return nondegeneracy_infimum(MassField(set, kernel), options);
}

double nondegeneracy_floor(const IndicatorGrid& set, const RadialKernel& kernel) {
  const double h = set.spacing();
  return kernel.eval(h) * std::pow(h, set.dimension() - 1);
}

double rasterization_floor(const IndicatorGrid& set) {
  return 0.4 * static_cast<double>(boundary_cells(set).size()) * set.cell_volume();
}

// ---------------------------------------------------------------- perimeter

PerimeterResult h_perimeter(const IndicatorGrid& set, const RadialKernel& kernel, double truncation_radius) {
  if (kernel.dimension() != set.dimension()) {
    throw std::invalid_argument("kernel dimension does not match the set dimension");
  }
  PerimeterResult out;
  const std::vector<std::size_t> cells = set.occupied_cells();
  if (cells.empty()) return out;
  const int dim = set.dimension();
  const double h = set.spacing();
  const bool compact = kernel.bounded();
  double range = 0.0;
  if (compact) {
    range = kernel.support_radius();
  } else {
    range = truncation_radius > 0.0 ? truncation_radius : diameter(set) + 0.5 * h;
    out.truncated = true;
  }
  out.truncation_radius = range;
  const double range_sq = range * range;

  std::vector<double> radii_sq;
  for (double r : kernel.radii()) radii_sq.push_back(r * r);
  const std::vector<double> values(kernel.levels().begin(), kernel.levels().end());
  auto profile_sq = [&](double d2) {
    if (!compact) return d2 > 0.0 && d2 < range_sq ? std::pow(d2, -0.5 * kernel.exponent()) : 0.0;
    for (std::size_t k = 0; k < radii_sq.size(); ++k) {
      if (d2 < radii_sq[k]) return values[k];
    }
    return 0.0;
  };

  // Lattice offsets within range, with their kernel values.
  const auto m = static_cast<std::int64_t>(std::ceil(range / h)) + 1;
  const std::int64_t m1 = dim > 1 ? m : 0;
  const std::int64_t m2 = dim > 2 ? m : 0;
  std::vector<CellIndex> offsets;
  std::vector<double> weights;
  double lattice = 0.0;
  for (std::int64_t i = -m; i <= m; ++i) {
    for (std::int64_t j = -m1; j <= m1; ++j) {
      for (std::int64_t k = -m2; k <= m2; ++k) {
        if (i == 0 && j == 0 && k == 0) continue;
        const double a = static_cast<double>(i) * h;
        const double b = static_cast<double>(j) * h;
        const double c = static_cast<double>(k) * h;
        double d2 = a * a;
        if (dim > 1) d2 = d2 + b * b;
        if (dim > 2) d2 = d2 + c * c;
        const double w = profile_sq(d2);
        if (w == 0.0) continue;
        offsets.push_back({i, j, k});
        weights.push_back(w);
        lattice += w;
      }
    }
  }

  std::vector<double> exterior(cells.size(), 0.0);
  if (compact) {
    // Direct stencil walk over the empty neighbours.
    parallel_for(cells.size(), [&](std::size_t begin, std::size_t end) {
      for (std::size_t q = begin; q < end; ++q) {
        const CellIndex c = set.unravel(cells[q]);
        double e = 0.0;
        for (std::size_t o = 0; o < offsets.size(); ++o) {
          const CellIndex n{c[0] + offsets[o][0], c[1] + offsets[o][1], c[2] + offsets[o][2]};
          if (!set.occupied(n)) e += weights[o];
        }
        exterior[q] = e;
      }
    });
  } else {
    std::vector<double> xs, ys, zs;
    for (std::size_t i : cells) {
      const Point p = set.center(i);
      xs.push_back(p[0]);
      if (dim > 1) ys.push_back(p[1]);
      if (dim > 2) zs.push_back(p[2]);
    }
    const simd::CloudView cloud{xs.data(), ys.empty() ? nullptr : ys.data(), zs.empty() ? nullptr : zs.data(),
                                cells.size(), dim};
    parallel_for(cells.size(), [&](std::size_t begin, std::size_t end) {
      for (std::size_t q = begin; q < end; ++q) {
        const Point y{xs[q], dim > 1 ? ys[q] : 0.0, dim > 2 ? zs[q] : 0.0};
        exterior[q] = lattice - simd::sum_power(cloud, y, kernel.exponent(), range_sq);
      }
    });
  }
  double sum = 0.0;
  for (double v : exterior) sum += v;
  const double vol = set.cell_volume();
  out.value = sum * vol * vol;
  return out;
}

double h_mean_curvature(const IndicatorGrid& set, const Point& x, const RadialKernel& kernel) {
  if (!std::isfinite(kernel.l1_norm())) {
    throw std::domain_error(
        "criticality integral only: the kernel is not globally integrable, so H_h is undefined; use "
        "criticality_report");
  }
  return kernel.l1_norm() - 2.0 * local_mass_direct(set, x, kernel);
}

// --------------------------------------------------------------------- CSV

void write_criticality_csv(std::ostream& out, const CriticalityReport& report) {
  for (int k = 0; k < report.dim; ++k) out << 'x' << (k + 1) << ',';
  out << "value\n";
  for (std::size_t i = 0; i < report.points.size(); ++i) {
    for (int k = 0; k < report.dim; ++k) out << detail::fmt(report.points[i][k]) << ',';
    out << detail::fmt(report.values[i]) << '\n';
  }
}

void write_nondeg_csv(std::ostream& out, const NondegeneracyResult& result) {
  for (int k = 0; k < result.dim; ++k) out << 'x' << (k + 1) << ',';
  for (int k = 0; k < result.dim; ++k) out << 'y' << (k + 1) << ',';
  out << "distance,quotient\n";
  for (const auto& pq : result.per_sample) {
    for (int k = 0; k < result.dim; ++k) out << detail::fmt(pq.a[k]) << ',';
    for (int k = 0; k < result.dim; ++k) out << detail::fmt(pq.b[k]) << ',';
    out << detail::fmt(pq.distance) << ',' << detail::fmt(pq.quotient) << '\n';
  }
}

}  // namespace nlc
