#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "nlc/grid.hpp"

namespace nlc::detail {

/// Counts occupied cell centres inside open balls using prefix sums along the
/// last axis. The membership predicate is evaluated exactly as in the dense
/// kernels (((dx*dx + dy*dy) + dz*dz) < r^2), so both routes agree cell for cell.
class LineCounts {
 public:
  explicit LineCounts(const IndicatorGrid& set);

  /// #{occupied c : |c - x|^2 < r_sq}
  std::size_t ball(const Point& x, double r_sq) const;
  /// #{occupied c in exactly one of the two balls}
  std::size_t symmetric_difference(const Point& a, const Point& b, double r_sq) const;

 private:
  struct Span {
    std::int64_t lo = 0;
    std::int64_t hi = -1;  // inclusive; empty when hi < lo
  };

  enum class Cover { none, full, partial };

  bool inside(double partial, double x, double r_sq, std::int64_t j) const;
  // Cells j of one line with partial + (c_j - x)^2 < r_sq.
  Span span(double partial, double x, double r_sq) const;
  // How the ball's chord relates to the occupied cells of the line.
  Cover cover(std::size_t line, double partial, double x, double r_sq) const;
  std::size_t count(std::size_t line, const Span& s) const;
  // Calls f(line, partial_a, partial_b) for lines crossing either ball.
  template <typename F>
  void for_lines(const Point& a, const Point& b, double r_sq, const F& f) const;

  int dim_;
  CellIndex dims_;
  Point origin_;
  double h_;
  std::int64_t n_;  // cells per line
  std::vector<std::uint32_t> prefix_;
  // First and last occupied cell of each line (first > last when empty).
  std::vector<std::int64_t> first_, last_;
};

}  // namespace nlc::detail
