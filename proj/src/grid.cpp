#include "nlc/grid.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <stdexcept>
#include <string>

namespace nlc {

double dot(const Point& a, const Point& b, int dim) {
  double s = 0.0;
  for (int k = 0; k < dim; ++k) s += a[k] * b[k];
  return s;
}

double distance(const Point& a, const Point& b, int dim) {
  double s = 0.0;
  for (int k = 0; k < dim; ++k) {
    const double d = a[k] - b[k];
    s += d * d;
  }
  return std::sqrt(s);
}

// ---------------------------------------------------------------- Hyperplane

Hyperplane::Hyperplane(const Point& normal, double offset, int dim) : offset_(offset), dim_(dim) {
  if (dim < 1 || dim > 3) throw std::invalid_argument("hyperplane dimension must be 1, 2 or 3");
  const double norm = std::sqrt(dot(normal, normal, dim));
  if (!(norm > 0.0) || !std::isfinite(norm)) throw std::invalid_argument("hyperplane normal must be nonzero");
  for (int k = 0; k < dim; ++k) normal_[k] = normal[k] / norm;
}

Point Hyperplane::mirror(const Point& p) const {
  const double s = signed_distance(p);
  Point q = p;
  for (int k = 0; k < dim_; ++k) q[k] -= 2.0 * s * normal_[k];
  return q;
}

Hyperplane Hyperplane::shifted_to(double offset) const {
  Hyperplane h = *this;
  h.offset_ = offset;
  return h;
}

// ------------------------------------------------------------- IndicatorGrid

IndicatorGrid::IndicatorGrid(int dim, const CellIndex& dims, const Point& origin, double spacing,
                             std::vector<std::uint8_t> occupancy)
    : dim_(dim), dims_(dims), origin_(origin), spacing_(spacing), occ_(std::move(occupancy)) {
  if (dim < 1 || dim > 3) throw std::invalid_argument("grid dimension must be 1, 2 or 3");
  if (!(spacing > 0.0) || !std::isfinite(spacing)) throw std::invalid_argument("grid spacing must be positive");
  std::size_t n = 1;
  for (int k = 0; k < 3; ++k) {
    if (k >= dim) {
      dims_[k] = 1;
      origin_[k] = 0.0;
    }
    if (dims_[k] < 1) throw std::invalid_argument("grid dims must be positive");
    n *= static_cast<std::size_t>(dims_[k]);
  }
  if (occ_.size() != n) {
    throw std::invalid_argument("occupancy size " + std::to_string(occ_.size()) + " does not match dims (" +
                                std::to_string(n) + " cells)");
  }
  for (auto& v : occ_) v = v ? 1 : 0;
}

namespace {

std::size_t cell_total(int dim, const CellIndex& dims) {
  std::size_t n = 1;
  for (int k = 0; k < dim && k < 3; ++k) n *= static_cast<std::size_t>(std::max<std::int64_t>(dims[k], 1));
  return n;
}

}  // namespace

IndicatorGrid::IndicatorGrid(int dim, const CellIndex& dims, const Point& origin, double spacing)
    : IndicatorGrid(dim, dims, origin, spacing, std::vector<std::uint8_t>(cell_total(dim, dims), 0)) {}

bool IndicatorGrid::contains(const CellIndex& cell) const {
  for (int k = 0; k < 3; ++k) {
    if (cell[k] < 0 || cell[k] >= dims_[k]) return false;
  }
  return true;
}

bool IndicatorGrid::occupied(const CellIndex& cell) const {
  return contains(cell) && occ_[linear(cell)] != 0;
}

std::size_t IndicatorGrid::linear(const CellIndex& cell) const {
  return static_cast<std::size_t>((cell[0] * dims_[1] + cell[1]) * dims_[2] + cell[2]);
}

CellIndex IndicatorGrid::unravel(std::size_t linear) const {
  CellIndex c{};
  const auto l = static_cast<std::int64_t>(linear);
  c[2] = l % dims_[2];
  c[1] = (l / dims_[2]) % dims_[1];
  c[0] = l / (dims_[2] * dims_[1]);
  return c;
}

Point IndicatorGrid::center(const CellIndex& cell) const {
  Point p{};
  for (int k = 0; k < dim_; ++k) p[k] = origin_[k] + (static_cast<double>(cell[k]) + 0.5) * spacing_;
  return p;
}

CellIndex IndicatorGrid::locate(const Point& p) const {
  CellIndex c{};
  for (int k = 0; k < dim_; ++k) c[k] = static_cast<std::int64_t>(std::floor((p[k] - origin_[k]) / spacing_));
  return c;
}

double IndicatorGrid::cell_volume() const { return std::pow(spacing_, dim_); }

std::size_t IndicatorGrid::occupied_count() const {
  return static_cast<std::size_t>(std::count(occ_.begin(), occ_.end(), std::uint8_t{1}));
}

std::vector<std::size_t> IndicatorGrid::occupied_cells() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < occ_.size(); ++i) {
    if (occ_[i]) out.push_back(i);
  }
  return out;
}

bool IndicatorGrid::has_margin(int margin) const {
  for (std::size_t i = 0; i < occ_.size(); ++i) {
    if (!occ_[i]) continue;
    const CellIndex c = unravel(i);
    for (int k = 0; k < dim_; ++k) {
      if (c[k] < margin || c[k] >= dims_[k] - margin) return false;
    }
  }
  return true;
}

std::optional<CellIndex> IndicatorGrid::lattice_offset(const IndicatorGrid& other) const {
  if (other.dim_ != dim_) return std::nullopt;
  if (std::abs(other.spacing_ - spacing_) > 1e-12 * spacing_) return std::nullopt;
  CellIndex off{};
  for (int k = 0; k < dim_; ++k) {
    const double q = (other.origin_[k] - origin_[k]) / spacing_;
    const double r = std::round(q);
    if (std::abs(q - r) > 1e-6) return std::nullopt;
    off[k] = static_cast<std::int64_t>(r);
  }
  return off;
}

IndicatorGrid IndicatorGrid::padded(std::int64_t cells) const {
  CellIndex dims = dims_;
  Point origin = origin_;
  for (int k = 0; k < dim_; ++k) {
    dims[k] += 2 * cells;
    origin[k] -= static_cast<double>(cells) * spacing_;
  }
  IndicatorGrid out(dim_, dims, origin, spacing_);
  for (std::size_t i = 0; i < occ_.size(); ++i) {
    if (!occ_[i]) continue;
    CellIndex c = unravel(i);
    for (int k = 0; k < dim_; ++k) c[k] += cells;
    out.occ_[out.linear(c)] = 1;
  }
  return out;
}

// ---------------------------------------------------------------- measures

double measure(const IndicatorGrid& set) {
  return static_cast<double>(set.occupied_count()) * set.cell_volume();
}

double diameter(const IndicatorGrid& set) {
  const int dim = set.dimension();
  const CellIndex& n = set.dims();
  // A vertex of the convex hull is extreme on every line through it, so the
  // cells extreme along all axis lines contain every hull vertex.
  std::vector<std::uint8_t> flags(set.cell_count(), 0);
  for (int axis = 0; axis < dim; ++axis) {
    const std::uint8_t bit = static_cast<std::uint8_t>(1u << axis);
    CellIndex c{};
    CellIndex lim = n;
    lim[axis] = 1;
    for (c[0] = 0; c[0] < lim[0]; ++c[0]) {
      for (c[1] = 0; c[1] < lim[1]; ++c[1]) {
        for (c[2] = 0; c[2] < lim[2]; ++c[2]) {
          CellIndex lo = c;
          std::int64_t first = -1;
          std::int64_t last = -1;
          for (std::int64_t t = 0; t < n[axis]; ++t) {
            lo[axis] = t;
            if (set.occupied(set.linear(lo))) {
              if (first < 0) first = t;
              last = t;
            }
          }
          if (first < 0) continue;
          lo[axis] = first;
          flags[set.linear(lo)] |= bit;
          lo[axis] = last;
          flags[set.linear(lo)] |= bit;
        }
      }
    }
  }
  const std::uint8_t all = static_cast<std::uint8_t>((1u << dim) - 1u);
  std::vector<Point> candidates;
  for (std::size_t i = 0; i < flags.size(); ++i) {
    if (flags[i] == all) candidates.push_back(set.center(i));
  }
  if (candidates.empty()) throw std::invalid_argument("diameter of an empty set");
  double best = 0.0;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    for (std::size_t j = i + 1; j < candidates.size(); ++j) {
      double s = 0.0;
      for (int k = 0; k < dim; ++k) {
        const double d = candidates[i][k] - candidates[j][k];
        s += d * d;
      }
      best = std::max(best, s);
    }
  }
  return std::sqrt(best);
}

BoundarySample boundary_cells(const IndicatorGrid& set) {
  BoundarySample out;
  const int dim = set.dimension();
  const CellIndex& n = set.dims();
  for (std::size_t i = 0; i < set.cell_count(); ++i) {
    const CellIndex c = set.unravel(i);
    int occ = 0;
    int total = 0;
    CellIndex lo{};
    CellIndex hi{};
    for (int k = 0; k < 3; ++k) {
      lo[k] = k < dim ? std::max<std::int64_t>(c[k] - 1, 0) : 0;
      hi[k] = k < dim ? std::min<std::int64_t>(c[k] + 1, n[k] - 1) : 0;
    }
    CellIndex q{};
    for (q[0] = lo[0]; q[0] <= hi[0]; ++q[0]) {
      for (q[1] = lo[1]; q[1] <= hi[1]; ++q[1]) {
        for (q[2] = lo[2]; q[2] <= hi[2]; ++q[2]) {
          occ += set.occupied(set.linear(q)) ? 1 : 0;
          ++total;
        }
      }
    }
    if (occ > 0 && occ < total) {
      out.points.push_back(set.center(c));
      out.cells.push_back(i);
      out.occupied_fraction.push_back(static_cast<double>(occ) / total);
    }
  }
  return out;
}

BoundarySample essential_boundary(const IndicatorGrid& set) {
  const std::size_t occ = set.occupied_count();
  if (occ == 0) throw std::invalid_argument("essential boundary of an empty set");
  if (occ == set.cell_count()) throw std::invalid_argument("essential boundary of a set filling its box");
  return boundary_cells(set);
}

// ---------------------------------------------------------- set operations

namespace {

struct Box {
  CellIndex lo{};
  CellIndex hi{};  // exclusive
};

// Box of `g` expressed in the lattice coordinates of `ref`.
Box box_in(const IndicatorGrid& ref, const IndicatorGrid& g) {
  const auto off = ref.lattice_offset(g);
  if (!off) throw std::invalid_argument("grids do not share a lattice");
  Box b;
  for (int k = 0; k < 3; ++k) {
    b.lo[k] = (*off)[k];
    b.hi[k] = (*off)[k] + g.dims()[k];
  }
  return b;
}

IndicatorGrid empty_on(const IndicatorGrid& ref, const Box& box) {
  CellIndex dims{};
  Point origin{};
  for (int k = 0; k < 3; ++k) dims[k] = box.hi[k] - box.lo[k];
  for (int k = 0; k < ref.dimension(); ++k) origin[k] = ref.origin()[k] + static_cast<double>(box.lo[k]) * ref.spacing();
  return IndicatorGrid(ref.dimension(), dims, origin, ref.spacing());
}

Box hull(const Box& a, const Box& b) {
  Box out;
  for (int k = 0; k < 3; ++k) {
    out.lo[k] = std::min(a.lo[k], b.lo[k]);
    out.hi[k] = std::max(a.hi[k], b.hi[k]);
  }
  return out;
}

// Calls f(cell in a's coordinates, bit in a, bit in b) over the union box.
template <class F>
void zip_cells(const IndicatorGrid& a, const IndicatorGrid& b, const F& f) {
  const Box ba = box_in(a, a);
  const Box bb = box_in(a, b);
  const Box u = hull(ba, bb);
  CellIndex c{};
  for (c[0] = u.lo[0]; c[0] < u.hi[0]; ++c[0]) {
    for (c[1] = u.lo[1]; c[1] < u.hi[1]; ++c[1]) {
      for (c[2] = u.lo[2]; c[2] < u.hi[2]; ++c[2]) {
        const bool in_a = a.occupied(c);
        CellIndex cb{};
        for (int k = 0; k < 3; ++k) cb[k] = c[k] - bb.lo[k];
        const bool in_b = b.occupied(cb);
        f(c, u, in_a, in_b);
      }
    }
  }
}

template <class Op>
IndicatorGrid combine(const IndicatorGrid& a, const IndicatorGrid& b, const Op& op) {
  const Box u = hull(box_in(a, a), box_in(a, b));
  IndicatorGrid out = empty_on(a, u);
  std::vector<std::uint8_t> occ(out.cell_count(), 0);
  zip_cells(a, b, [&](const CellIndex& c, const Box& box, bool in_a, bool in_b) {
    if (!op(in_a, in_b)) return;
    CellIndex local{};
    for (int k = 0; k < 3; ++k) local[k] = c[k] - box.lo[k];
    occ[out.linear(local)] = 1;
  });
  return IndicatorGrid(a.dimension(), out.dims(), out.origin(), a.spacing(), std::move(occ));
}

}  // namespace

IndicatorGrid set_union(const IndicatorGrid& a, const IndicatorGrid& b) {
  return combine(a, b, [](bool x, bool y) { return x || y; });
}

IndicatorGrid set_difference(const IndicatorGrid& a, const IndicatorGrid& b) {
  return combine(a, b, [](bool x, bool y) { return x && !y; });
}

double difference_measure(const IndicatorGrid& a, const IndicatorGrid& b) {
  std::size_t count = 0;
  zip_cells(a, b, [&](const CellIndex&, const Box&, bool in_a, bool in_b) { count += (in_a && !in_b) ? 1 : 0; });
  return static_cast<double>(count) * a.cell_volume();
}

double symmetric_difference_measure(const IndicatorGrid& a, const IndicatorGrid& b) {
  std::size_t count = 0;
  zip_cells(a, b, [&](const CellIndex&, const Box&, bool in_a, bool in_b) { count += (in_a != in_b) ? 1 : 0; });
  return static_cast<double>(count) * a.cell_volume();
}

IndicatorGrid clip_halfspace(const IndicatorGrid& set, const Hyperplane& plane, Side side) {
  std::vector<std::uint8_t> occ(set.cell_count(), 0);
  for (std::size_t i = 0; i < set.cell_count(); ++i) {
    if (!set.occupied(i)) continue;
    const double s = plane.signed_distance(set.center(i));
    const bool minus = s <= 0.0;
    occ[i] = (minus == (side == Side::minus)) ? 1 : 0;
  }
  return IndicatorGrid(set.dimension(), set.dims(), set.origin(), set.spacing(), std::move(occ));
}

IndicatorGrid reflect(const IndicatorGrid& set, const Hyperplane& plane) {
  const int dim = set.dimension();
  const double h = set.spacing();
  Box own = box_in(set, set);
  Box image{};
  bool any = false;
  for (std::size_t i = 0; i < set.cell_count(); ++i) {
    if (!set.occupied(i)) continue;
    const CellIndex c = set.locate(plane.mirror(set.center(i)));
    for (int k = 0; k < 3; ++k) {
      const std::int64_t lo = k < dim ? c[k] - 1 : 0;
      const std::int64_t hi = k < dim ? c[k] + 2 : 1;
      image.lo[k] = any ? std::min(image.lo[k], lo) : lo;
      image.hi[k] = any ? std::max(image.hi[k], hi) : hi;
    }
    any = true;
  }
  if (!any) return set;
  const Box u = hull(own, image);
  IndicatorGrid shape = empty_on(set, u);
  std::vector<std::uint8_t> occ(shape.cell_count(), 0);
  CellIndex c{};
  for (c[0] = image.lo[0]; c[0] < image.hi[0]; ++c[0]) {
    for (c[1] = image.lo[1]; c[1] < image.hi[1]; ++c[1]) {
      for (c[2] = image.lo[2]; c[2] < image.hi[2]; ++c[2]) {
        const CellIndex src = set.locate(plane.mirror(set.center(c)));
        if (!set.occupied(src)) continue;
        CellIndex local{};
        for (int k = 0; k < 3; ++k) local[k] = c[k] - u.lo[k];
        occ[shape.linear(local)] = 1;
      }
    }
  }
  return IndicatorGrid(dim, shape.dims(), shape.origin(), h, std::move(occ));
}

// ------------------------------------------------------------ Steiner check

namespace {

// Orthonormal basis of the normal's orthogonal complement.
std::array<Point, 2> complement_basis(const Point& nu, int dim) {
  std::array<Point, 2> basis{};
  if (dim == 2) {
    basis[0] = {-nu[1], nu[0], 0.0};
  } else if (dim == 3) {
    // Start from the axis least aligned with nu.
    int axis = 0;
    for (int k = 1; k < 3; ++k) {
      if (std::abs(nu[k]) < std::abs(nu[axis])) axis = k;
    }
    Point e{};
    e[axis] = 1.0;
    const double p = dot(e, nu, 3);
    Point u{e[0] - p * nu[0], e[1] - p * nu[1], e[2] - p * nu[2]};
    const double nu_len = std::sqrt(dot(u, u, 3));
    for (auto& v : u) v /= nu_len;
    basis[0] = u;
    basis[1] = {nu[1] * u[2] - nu[2] * u[1], nu[2] * u[0] - nu[0] * u[2], nu[0] * u[1] - nu[1] * u[0]};
  }
  return basis;
}

std::array<std::int64_t, 2> line_key(const Point& p, const std::array<Point, 2>& basis, double h, int dim) {
  std::array<std::int64_t, 2> key{0, 0};
  for (int b = 0; b < dim - 1; ++b) key[b] = static_cast<std::int64_t>(std::floor(dot(p, basis[b], dim) / h));
  return key;
}


}  // namespace

LineBinning::LineBinning(const Point& normal, double spacing, int dim)
    : basis_(complement_basis(normal, dim)), spacing_(spacing), dim_(dim) {}

std::array<std::int64_t, 2> LineBinning::key(const Point& p) const { return line_key(p, basis_, spacing_, dim_); }

bool filled_near(const IndicatorGrid& set, const Point& p) {
  const int dim = set.dimension();
  const double h = set.spacing();
  CellIndex base{};
  for (int k = 0; k < dim; ++k) base[k] = static_cast<std::int64_t>(std::floor((p[k] - set.origin()[k]) / h - 0.5));
  const int corners = 1 << dim;
  for (int m = 0; m < corners; ++m) {
    CellIndex q = base;
    for (int k = 0; k < dim; ++k) q[k] += (m >> k) & 1;
    if (set.occupied(q)) return true;
  }
  return false;
}

SteinerCheck steiner_check(const IndicatorGrid& set, const Hyperplane& plane, double tol) {
  SteinerCheck out;
  const int dim = set.dimension();
  const double h = set.spacing();
  const double vol = set.cell_volume();
  const Point& nu = plane.normal();
  const double ds = 0.5 * h;
  for (std::size_t lin : boundary_cells(set).cells) {
    if (!set.occupied(lin)) continue;
    const Point c = set.center(lin);
    const double s = plane.signed_distance(c);
    // March from c to its mirror image; the whole segment must lie in the set.
    const double dir = s > 0.0 ? -1.0 : 1.0;
    const auto steps = static_cast<std::int64_t>(std::floor(2.0 * std::abs(s) / ds));
    double empty = 0.0;
    for (std::int64_t k = 1; k <= steps + 1; ++k) {
      const double u = k <= steps ? static_cast<double>(k) * ds : 2.0 * std::abs(s);
      Point p = c;
      for (int d = 0; d < dim; ++d) p[d] += dir * u * nu[d];
      if (!filled_near(set, p)) empty += ds;
    }
    ++out.cells_tested;
    out.max_defect = std::max(out.max_defect, empty);
    if (empty > tol) {
      out.symmetric = false;
      out.violating_measure += vol;
    }
  }
  return out;
}

bool steiner_symmetric_about(const IndicatorGrid& set, const Hyperplane& plane, double tol) {
  return steiner_check(set, plane, tol).symmetric;
}

// ------------------------------------------------------------- components

Components connected_components(const IndicatorGrid& set) {
  Components out;
  const int dim = set.dimension();
  const CellIndex& n = set.dims();
  out.label.assign(set.cell_count(), -1);
  std::deque<std::size_t> queue;
  for (std::size_t start = 0; start < set.cell_count(); ++start) {
    if (!set.occupied(start) || out.label[start] >= 0) continue;
    const auto id = static_cast<std::int32_t>(out.cells.size());
    out.cells.emplace_back();
    out.label[start] = id;
    queue.push_back(start);
    while (!queue.empty()) {
      const std::size_t cur = queue.front();
      queue.pop_front();
      out.cells.back().push_back(cur);
      const CellIndex c = set.unravel(cur);
      CellIndex q{};
      for (q[0] = c[0] - 1; q[0] <= c[0] + 1; ++q[0]) {
        for (q[1] = (dim > 1 ? c[1] - 1 : 0); q[1] <= (dim > 1 ? c[1] + 1 : 0); ++q[1]) {
          for (q[2] = (dim > 2 ? c[2] - 1 : 0); q[2] <= (dim > 2 ? c[2] + 1 : 0); ++q[2]) {
            bool inside = true;
            for (int k = 0; k < 3; ++k) inside = inside && q[k] >= 0 && q[k] < n[k];
            if (!inside) continue;
            const std::size_t l = set.linear(q);
            if (set.occupied(l) && out.label[l] < 0) {
              out.label[l] = id;
              queue.push_back(l);
            }
          }
        }
      }
    }
    std::sort(out.cells.back().begin(), out.cells.back().end());
  }
  return out;
}

IndicatorGrid grid_from_cells(const IndicatorGrid& like, std::span<const std::size_t> cells) {
  std::vector<std::uint8_t> occ(like.cell_count(), 0);
  for (std::size_t c : cells) occ.at(c) = 1;
  return IndicatorGrid(like.dimension(), like.dims(), like.origin(), like.spacing(), std::move(occ));
}

// ----------------------------------------------------------- rasterizers

namespace {

IndicatorGrid lattice_box(const Point& lo, const Point& hi, double spacing, int dim, int margin) {
  CellIndex dims{1, 1, 1};
  Point origin{};
  for (int k = 0; k < dim; ++k) {
    const auto a = static_cast<std::int64_t>(std::floor(lo[k] / spacing)) - margin;
    const auto b = static_cast<std::int64_t>(std::ceil(hi[k] / spacing)) + margin;
    dims[k] = b - a;
    origin[k] = static_cast<double>(a) * spacing;
  }
  return IndicatorGrid(dim, dims, origin, spacing);
}

}  // namespace

IndicatorGrid from_balls(const std::vector<Point>& centers, double radius, double spacing, int dim, int margin) {
  if (!(radius > 0.0)) throw std::invalid_argument("ball radius must be positive");
  if (!(spacing > 0.0)) throw std::invalid_argument("grid spacing must be positive");
  if (centers.empty()) throw std::invalid_argument("from_balls needs at least one centre");
  Point lo{};
  Point hi{};
  for (int k = 0; k < dim; ++k) {
    lo[k] = std::numeric_limits<double>::infinity();
    hi[k] = -std::numeric_limits<double>::infinity();
    for (const auto& c : centers) {
      lo[k] = std::min(lo[k], c[k] - radius);
      hi[k] = std::max(hi[k], c[k] + radius);
    }
  }
  const IndicatorGrid shape = lattice_box(lo, hi, spacing, dim, margin);
  std::vector<std::uint8_t> occ(shape.cell_count(), 0);
  const double r2 = radius * radius;
  for (std::size_t i = 0; i < occ.size(); ++i) {
    const Point p = shape.center(i);
    for (const auto& c : centers) {
      double s = 0.0;
      for (int k = 0; k < dim; ++k) {
        const double d = p[k] - c[k];
        s += d * d;
      }
      if (s < r2) {
        occ[i] = 1;
        break;
      }
    }
  }
  return IndicatorGrid(dim, shape.dims(), shape.origin(), spacing, std::move(occ));
}

IndicatorGrid from_ellipsoid(const Point& center, const Point& semi_axes, double spacing, int dim, int margin) {
  Point lo{};
  Point hi{};
  for (int k = 0; k < dim; ++k) {
    if (!(semi_axes[k] > 0.0)) throw std::invalid_argument("ellipsoid semi-axes must be positive");
    lo[k] = center[k] - semi_axes[k];
    hi[k] = center[k] + semi_axes[k];
  }
  const IndicatorGrid shape = lattice_box(lo, hi, spacing, dim, margin);
  std::vector<std::uint8_t> occ(shape.cell_count(), 0);
  for (std::size_t i = 0; i < occ.size(); ++i) {
    const Point p = shape.center(i);
    double s = 0.0;
    for (int k = 0; k < dim; ++k) {
      const double d = (p[k] - center[k]) / semi_axes[k];
      s += d * d;
    }
    occ[i] = s < 1.0 ? 1 : 0;
  }
  return IndicatorGrid(dim, shape.dims(), shape.origin(), spacing, std::move(occ));
}

}  // namespace nlc
