#pragma once

// Dense inner loops over occupied cell centres. Every routine has a scalar
// reference implementation; an AVX2 variant is selected at runtime when the
// CPU supports it. Squared distances are formed as ((dx*dx + dy*dy) + dz*dz)
// without FMA in every variant, so membership tests agree bit for bit and
// only the order of floating-point summation differs.

#include <cstddef>
#include <span>

#include "nlc/grid.hpp"

namespace nlc::simd {

enum class Isa { scalar, avx2 };

const char* to_string(Isa isa);
bool isa_available(Isa isa);
/// Currently selected instruction set (process-wide). Defaults to the best
/// available one, or to the value of NLC_SIMD=scalar|avx2 if set.
Isa active_isa();
/// Throws std::invalid_argument if `isa` is not available on this CPU/build.
void set_active_isa(Isa isa);

/// Cell centres in structure-of-arrays layout. Unused axes may be null.
struct CloudView {
  const double* x = nullptr;
  const double* y = nullptr;
  const double* z = nullptr;
  std::size_t n = 0;
  int dim = 1;

  CloudView slice(std::size_t begin, std::size_t end) const;
};

/// Piecewise-constant radial profile on squared radii: value[i] where i is the
/// first index with d^2 < radii_sq[i]; zero past the last radius.
struct PiecewiseView {
  std::span<const double> radii_sq;
  std::span<const double> values;
};

struct KernelTable {
  double (*sum_piecewise)(const CloudView&, const Point&, const PiecewiseView&);
  double (*sum_abs_diff_piecewise)(const CloudView&, const Point&, const Point&, const PiecewiseView&);
  double (*sum_power)(const CloudView&, const Point&, double alpha, double cutoff_sq);
  double (*sum_abs_diff_power)(const CloudView&, const Point&, const Point&, double alpha);
  std::size_t (*count_within)(const CloudView&, const Point&, double r_sq);
};

const KernelTable& scalar_table();
#if defined(NLC_BUILD_AVX2)
const KernelTable& avx2_table();
#endif
const KernelTable& table_for(Isa isa);

/// sum over cells of phi(|c - x|).
double sum_piecewise(const CloudView& cloud, const Point& x, const PiecewiseView& profile);
/// sum over cells of |phi(|c - a|) - phi(|c - b|)|.
double sum_abs_diff_piecewise(const CloudView& cloud, const Point& a, const Point& b, const PiecewiseView& profile);
/// sum over cells with 0 < d^2 < cutoff_sq of d^(-alpha).
double sum_power(const CloudView& cloud, const Point& x, double alpha, double cutoff_sq);
/// sum over cells at positive distance from both points of |d_a^(-alpha) - d_b^(-alpha)|.
double sum_abs_diff_power(const CloudView& cloud, const Point& a, const Point& b, double alpha);
/// Number of cells with d^2 < r_sq.
std::size_t count_within(const CloudView& cloud, const Point& x, double r_sq);

}  // namespace nlc::simd
