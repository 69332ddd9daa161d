#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <vector>

#include "nlc/grid.hpp"
#include "nlc/kernel.hpp"

namespace nlc {

namespace detail {
class LineCounts;
}

struct MassOptions {
  /// Log-spaced panels of the level quadrature for power profiles.
  int power_panels = 512;
};

/// Local masses v(x) = int_Omega h(x - y) dy and pair deviations
/// int_Omega |h_x1 - h_x2| for one set and kernel, with the per-set
/// precomputation (cell coordinates, line prefix sums, diameter, sigma)
/// done once. Immutable after construction and safe to share between threads.
///
/// Direct sums evaluate phi at cell centres. For unbounded profiles the cell
/// containing x is replaced by the exact mass of h over B_{h/2}. The
/// layer-cake route counts cell centres in level balls B_{r(s)}(x), exactly
/// for piecewise-constant profiles and by log-spaced panels for power ones.
class MassField {
 public:
  MassField(const IndicatorGrid& set, const RadialKernel& kernel, MassOptions options = {});
  ~MassField();
  MassField(MassField&&) noexcept;
  MassField& operator=(MassField&&) noexcept;

  const IndicatorGrid& set() const { return set_; }
  const RadialKernel& kernel() const { return kernel_; }
  double diameter() const { return diam_; }
  double sigma() const { return sigma_; }

  double direct(const Point& x) const;
  double layer_cake(const Point& x) const;
  /// Layer-cake symmetric-difference route.
  double deviation(const Point& a, const Point& b) const;
  /// Cellwise sum of |h_a - h_b|.
  double deviation_direct(const Point& a, const Point& b) const;

 private:
  struct Excluded;
  Excluded self_cells(const Point& a, const Point& b) const;
  double nearest_other(const Point& x, const Excluded& ex) const;
  double power_direct_sum(const Point& x, const Excluded& ex) const;
  double self_terms(const Point& a, const Point& b, const Excluded& ex) const;

  IndicatorGrid set_;
  RadialKernel kernel_;
  MassOptions options_;
  std::vector<std::size_t> cells_;
  std::vector<double> xs_, ys_, zs_;
  std::vector<double> radii_sq_;
  std::vector<double> values_;
  std::unique_ptr<detail::LineCounts> counts_;
  Point box_lo_{};
  Point box_hi_{};
  double vol_ = 0.0;
  double diam_ = 0.0;
  double sigma_ = 0.0;
  double shell_ = 0.0;
};

double local_mass_direct(const IndicatorGrid& set, const Point& x, const RadialKernel& kernel);
double local_mass_layercake(const IndicatorGrid& set, const Point& x, const RadialKernel& kernel,
                            MassOptions options = {});
double pair_deviation(const IndicatorGrid& set, const Point& a, const Point& b, const RadialKernel& kernel);
double pair_deviation_direct(const IndicatorGrid& set, const Point& a, const Point& b, const RadialKernel& kernel);

enum class MassRoute { direct, layer_cake };

struct CriticalityReport {
  int dim = 2;
  std::vector<Point> points;
  std::vector<double> values;
  double mean = 0.0;
  /// max |v - mean| / mean
  double max_deviation = 0.0;

  std::size_t samples() const { return points.size(); }
};

/// Throws std::invalid_argument when the boundary sample is empty.
CriticalityReport criticality_report(const IndicatorGrid& set, const RadialKernel& kernel,
                                     MassRoute route = MassRoute::layer_cake);
CriticalityReport criticality_report(const MassField& field, MassRoute route = MassRoute::layer_cake);

struct NondegeneracyOptions {
  /// All pairs are evaluated when samples^2 <= pair_budget.
  std::size_t pair_budget = 1'000'000;
  std::uint64_t seed = 0;
  /// Distance strata of the sampled pairs.
  int strata = 16;
};

struct PairQuotient {
  Point a{};
  Point b{};
  double distance = 0.0;
  double quotient = 0.0;
};

struct NondegeneracyResult {
  int dim = 2;
  double value = 0.0;
  PairQuotient minimizer;
  std::size_t pairs_evaluated = 0;
  bool exhaustive = false;
  /// Best evaluated pair of each boundary sample, in boundary order.
  std::vector<PairQuotient> per_sample;
};

/// inf over boundary pairs of int_Omega |h_a - h_b| / |a - b|, over the
/// deterministic pair set described in NondegeneracyOptions.
NondegeneracyResult nondegeneracy_infimum(const IndicatorGrid& set, const RadialKernel& kernel,
                                          const NondegeneracyOptions& options = {});
NondegeneracyResult nondegeneracy_infimum(const MassField& field, const NondegeneracyOptions& options = {});

/// Value below which a nondegeneracy quotient is indistinguishable from zero
/// on this grid: phi(h) * h^(d-1).
double nondegeneracy_floor(const IndicatorGrid& set, const RadialKernel& kernel);
/// One boundary layer of cells, 0.4 * (boundary sample count) * h^d.
double rasterization_floor(const IndicatorGrid& set);

struct PerimeterResult {
  double value = 0.0;
  /// Interaction range used; r(0) for compact kernels.
  double truncation_radius = 0.0;
  bool truncated = false;
};

/// P_h = int_Omega int_{Omega^c} h(x - y) by lattice sums. Compact kernels are
/// exact on the lattice (the complement outside the box is included).
/// Power kernels drop pairs farther apart than `truncation_radius`
/// (default: diameter + h/2).
PerimeterResult h_perimeter(const IndicatorGrid& set, const RadialKernel& kernel, double truncation_radius = 0.0);

/// H_h(x) = ||h||_1 - 2 * local mass. Throws std::domain_error for kernels
/// that are not globally integrable.
double h_mean_curvature(const IndicatorGrid& set, const Point& x, const RadialKernel& kernel);

void write_criticality_csv(std::ostream& out, const CriticalityReport& report);
void write_nondeg_csv(std::ostream& out, const NondegeneracyResult& result);

}  // namespace nlc
