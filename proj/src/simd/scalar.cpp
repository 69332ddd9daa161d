// Scalar reference kernels. These define the semantics the SIMD variants are
// tested against.

#include <cmath>

#include "nlc/simd/kernels.hpp"

namespace nlc::simd {

namespace {

inline double dist_sq(const CloudView& c, std::size_t i, const Point& p) {
  const double dx = c.x[i] - p[0];
  double s = dx * dx;
  if (c.dim > 1) {
    const double dy = c.y[i] - p[1];
    s = s + dy * dy;
  }
  if (c.dim > 2) {
    const double dz = c.z[i] - p[2];
    s = s + dz * dz;
  }
  return s;
}

inline double piecewise_at(double d2, const PiecewiseView& f) {
  for (std::size_t k = 0; k < f.radii_sq.size(); ++k) {
    if (d2 < f.radii_sq[k]) return f.values[k];
  }
  return 0.0;
}

double sum_piecewise_scalar(const CloudView& c, const Point& x, const PiecewiseView& f) {
  double sum = 0.0;
  for (std::size_t i = 0; i < c.n; ++i) sum += piecewise_at(dist_sq(c, i, x), f);
  return sum;
}

double sum_abs_diff_piecewise_scalar(const CloudView& c, const Point& a, const Point& b, const PiecewiseView& f) {
  double sum = 0.0;
  for (std::size_t i = 0; i < c.n; ++i) {
    sum += std::abs(piecewise_at(dist_sq(c, i, a), f) - piecewise_at(dist_sq(c, i, b), f));
  }
  return sum;
}

double sum_power_scalar(const CloudView& c, const Point& x, double alpha, double cutoff_sq) {
  const double e = -0.5 * alpha;
  double sum = 0.0;
  for (std::size_t i = 0; i < c.n; ++i) {
    const double d2 = dist_sq(c, i, x);
    if (d2 > 0.0 && d2 < cutoff_sq) sum += std::pow(d2, e);
  }
  return sum;
}

double sum_abs_diff_power_scalar(const CloudView& c, const Point& a, const Point& b, double alpha) {
  const double e = -0.5 * alpha;
  double sum = 0.0;
  for (std::size_t i = 0; i < c.n; ++i) {
    const double da = dist_sq(c, i, a);
    const double db = dist_sq(c, i, b);
    if (da > 0.0 && db > 0.0) sum += std::abs(std::pow(da, e) - std::pow(db, e));
  }
  return sum;
}

std::size_t count_within_scalar(const CloudView& c, const Point& x, double r_sq) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < c.n; ++i) count += dist_sq(c, i, x) < r_sq ? 1 : 0;
  return count;
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable table{sum_piecewise_scalar, sum_abs_diff_piecewise_scalar, sum_power_scalar,
                                 sum_abs_diff_power_scalar, count_within_scalar};
  return table;
}

}  // namespace nlc::simd
