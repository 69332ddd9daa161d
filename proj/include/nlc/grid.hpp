#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace nlc {

/// A point of R^d, d <= 3; unused trailing coordinates are zero.
using Point = std::array<double, 3>;
/// Integer cell coordinates; unused trailing entries are zero.
using CellIndex = std::array<std::int64_t, 3>;

double dot(const Point& a, const Point& b, int dim);
double distance(const Point& a, const Point& b, int dim);

/// Oriented hyperplane {p : <p, normal> = offset}. The closed half-space
/// <p, normal> <= offset is the "-" side.
class Hyperplane {
 public:
  /// Normalizes `normal`; throws std::invalid_argument for a zero vector.
  Hyperplane(const Point& normal, double offset, int dim);

  const Point& normal() const { return normal_; }
  double offset() const { return offset_; }
  int dimension() const { return dim_; }

  double signed_distance(const Point& p) const { return dot(p, normal_, dim_) - offset_; }
  Point mirror(const Point& p) const;
  /// Same normal, different offset.
  Hyperplane shifted_to(double offset) const;

 private:
  Point normal_{};
  double offset_ = 0.0;
  int dim_ = 1;
};

enum class Side { minus, plus };

/// A bounded measurable set rasterized on a regular grid. A cell is occupied
/// when its centre belongs to the set. Cell i has centre
/// origin + (i + 1/2) * spacing along each axis; linear indices run in
/// lexicographic order with the last axis fastest.
///
/// Grids produced by the operations below keep the lattice of their input, so
/// any two of them can be compared cell by cell.
class IndicatorGrid {
 public:
  IndicatorGrid(int dim, const CellIndex& dims, const Point& origin, double spacing,
                std::vector<std::uint8_t> occupancy);
  /// All-empty grid.
  IndicatorGrid(int dim, const CellIndex& dims, const Point& origin, double spacing);

  int dimension() const { return dim_; }
  const CellIndex& dims() const { return dims_; }
  const Point& origin() const { return origin_; }
  double spacing() const { return spacing_; }
  std::size_t cell_count() const { return occ_.size(); }
  std::span<const std::uint8_t> occupancy() const { return occ_; }

  bool occupied(std::size_t linear) const { return occ_[linear] != 0; }
  /// Out-of-box cells count as empty.
  bool occupied(const CellIndex& cell) const;
  bool contains(const CellIndex& cell) const;

  std::size_t linear(const CellIndex& cell) const;
  CellIndex unravel(std::size_t linear) const;
  Point center(const CellIndex& cell) const;
  Point center(std::size_t linear) const { return center(unravel(linear)); }
  /// Cell containing p (may lie outside the box).
  CellIndex locate(const Point& p) const;

  double cell_volume() const;
  std::size_t occupied_count() const;
  /// Linear indices of occupied cells, ascending.
  std::vector<std::size_t> occupied_cells() const;

  bool empty() const { return occupied_count() == 0; }
  /// Whether every occupied cell is at least `margin` cells away from the box faces.
  bool has_margin(int margin = 1) const;

  /// Integer offset of `other`'s origin in this grid's lattice, when the two
  /// grids share spacing and lattice alignment.
  std::optional<CellIndex> lattice_offset(const IndicatorGrid& other) const;

  /// Same lattice, box grown by `cells` on every side.
  IndicatorGrid padded(std::int64_t cells) const;

  bool operator==(const IndicatorGrid& other) const = default;

 private:
  int dim_;
  CellIndex dims_;
  Point origin_;
  double spacing_;
  std::vector<std::uint8_t> occ_;
};

/// Discrete essential boundary: centres of cells whose 3^d neighbourhood
/// (clipped to the box) holds both occupied and empty cells.
struct BoundarySample {
  std::vector<Point> points;
  std::vector<std::size_t> cells;
  /// Occupied fraction of each neighbourhood, strictly inside (0, 1).
  std::vector<double> occupied_fraction;

  std::size_t size() const { return points.size(); }
  bool empty() const { return points.empty(); }
};

double measure(const IndicatorGrid& set);
/// Largest distance between occupied cell centres. Throws for an empty set.
double diameter(const IndicatorGrid& set);
/// Throws std::invalid_argument when the set or its in-box complement is empty.
BoundarySample essential_boundary(const IndicatorGrid& set);
/// Boundary sample without the emptiness checks (may be empty).
BoundarySample boundary_cells(const IndicatorGrid& set);

/// Mirror image about `plane`: a target cell is occupied when the mirror of
/// its centre falls in an occupied cell. The box grows to hold the image.
IndicatorGrid reflect(const IndicatorGrid& set, const Hyperplane& plane);
/// Cells whose centres lie on `side` of `plane`; centres on the plane go to minus.
IndicatorGrid clip_halfspace(const IndicatorGrid& set, const Hyperplane& plane, Side side);

struct SteinerCheck {
  bool symmetric = true;
  /// Largest uncovered length found on one segment.
  double max_defect = 0.0;
  /// Measure of the cells whose segment exceeds the tolerance.
  double violating_measure = 0.0;
  std::size_t cells_tested = 0;
};

/// Steiner symmetry about `plane`: for every occupied boundary cell the
/// segment from its centre to its mirror image must lie in the set, except
/// for at most `tol` of uncovered length. A point counts as covered when one
/// of the 2^d cell centres around it is occupied, so rasterized convex sets
/// show no spurious gaps.
SteinerCheck steiner_check(const IndicatorGrid& set, const Hyperplane& plane, double tol);
bool steiner_symmetric_about(const IndicatorGrid& set, const Hyperplane& plane, double tol);
/// Whether one of the 2^d cell centres surrounding p is occupied.
bool filled_near(const IndicatorGrid& set, const Point& p);

/// Groups points into lines parallel to `normal`: the key is the bin (width
/// `spacing`) of the point's projection onto the normal's complement.
class LineBinning {
 public:
  LineBinning(const Point& normal, double spacing, int dim);
  std::array<std::int64_t, 2> key(const Point& p) const;

 private:
  std::array<Point, 2> basis_;
  double spacing_;
  int dim_;
};

/// Cells of the union / difference on a common box. Grids must share a lattice.
IndicatorGrid set_union(const IndicatorGrid& a, const IndicatorGrid& b);
IndicatorGrid set_difference(const IndicatorGrid& a, const IndicatorGrid& b);
/// Measure of a \ b.
double difference_measure(const IndicatorGrid& a, const IndicatorGrid& b);
/// Measure of the symmetric difference.
double symmetric_difference_measure(const IndicatorGrid& a, const IndicatorGrid& b);

/// Grid-connected components (3^d adjacency); label -1 for empty cells,
/// components numbered in order of their first cell.
struct Components {
  std::vector<std::int32_t> label;
  std::vector<std::vector<std::size_t>> cells;

  std::size_t count() const { return cells.size(); }
};
Components connected_components(const IndicatorGrid& set);
/// Grid holding only the listed cells of `like`'s lattice and box.
IndicatorGrid grid_from_cells(const IndicatorGrid& like, std::span<const std::size_t> cells);

/// Rasterize a union of balls of common radius. The lattice is anchored at the
/// coordinate origin (cell centres at (k + 1/2) * spacing); the box leaves
/// `margin` empty cells around the balls.
IndicatorGrid from_balls(const std::vector<Point>& centers, double radius, double spacing, int dim,
                         int margin = 2);
/// Axis-aligned ellipsoid with the given semi-axes.
IndicatorGrid from_ellipsoid(const Point& center, const Point& semi_axes, double spacing, int dim,
                             int margin = 2);

}  // namespace nlc
