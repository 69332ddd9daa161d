#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "nlc/curvature.hpp"
#include "nlc/grid.hpp"
#include "nlc/kernel.hpp"
#include "nlc/moving_planes.hpp"

namespace nlc {

/// Area (d=2) of the intersection of discs of radii r1, r2 at centre distance dist.
double lens_area(double r1, double r2, double dist);
/// Volume (d=3) of the intersection of balls of radii r1, r2 at centre distance dist.
double lens_volume(double r1, double r2, double dist);
/// Measure of B_r1 ∩ B_r2(dist * e_1) in R^d, d in {1, 2, 3}.
double lens_measure(double r1, double r2, double dist, int dim);

/// The constant int_{B_R} h(x - y) dy for x on the sphere of radius R.
/// Exact level sums of lens measures for piecewise-constant kernels; for the
/// power kernel a Gauss-Legendre radial quadrature.
double ball_constant_oracle(const RadialKernel& kernel, double radius, int dim);

struct BallFit {
  Point center{};
  double radius = 0.0;
  /// RMS of |p - center| - radius over the fitted points.
  double rms = 0.0;
};

/// Algebraic least-squares sphere through the points (solves for centre and
/// c = R^2 - |center|^2). Throws std::invalid_argument for fewer than d + 1 points.
BallFit fit_ball(const std::vector<Point>& points, int dim);

enum class Verdict { pass, fail, not_applicable };
const char* to_string(Verdict verdict);

struct DetectedBall {
  Point center{};
  double radius = 0.0;
  double fit_rms = 0.0;
  /// Measure of the cells removed with this ball.
  double measure = 0.0;
  std::size_t cells = 0;
  /// Sweep direction whose decomposition produced the component.
  Point direction{};
  bool radius_ok = true;
};

struct GapCheck {
  std::size_t i = 0;
  std::size_t j = 0;
  double gap = 0.0;
  bool ok = true;
};

struct RigidityOptions {
  std::size_t max_balls = 64;
  /// Ball fit residual limit, in grid spacings (RMS).
  double fit_rms = 3.0;
  /// Criticality passes when deviation <= factor * (deviation of a rasterized
  /// ball of the same total measure at the same spacing).
  double criticality_factor = 3.0;
  /// Slack on R > eta/2 and gap >= r(sigma), in grid spacings.
  double bound_slack = 2.0;
  /// Largest allowed spread of radii, in grid spacings.
  double radius_spread = 4.0;
  bool check_nondegeneracy = true;
  SweepOptions sweep;
  /// The hypothesis check samples fewer pairs than the standalone
  /// nondegeneracy run.
  NondegeneracyOptions nondegeneracy{.pair_budget = 20'000};
};

struct RigidityReport {
  int dim = 2;
  double spacing = 0.0;
  double measure = 0.0;
  double diameter = 0.0;
  std::vector<DetectedBall> balls;
  double residual_measure = 0.0;
  double floor = 0.0;

  double eta = 0.0;
  double sigma = 0.0;
  double r_sigma = 0.0;

  double criticality_mean = 0.0;
  double criticality_deviation = 0.0;
  double calibration_deviation = 0.0;
  double criticality_threshold = 0.0;
  /// Criticality deviation of what is left after each extraction (empty
  /// remainders are skipped).
  std::vector<double> remainder_deviation;
  double nondegeneracy = 0.0;
  double nondegeneracy_floor = 0.0;
  bool integrable = false;

  bool radii_equal = true;
  std::vector<GapCheck> gaps;

  Verdict verdict = Verdict::not_applicable;
  std::vector<std::string> reasons;
};

/// Hypothesis checks, then repeated extraction: sweep the fan of d + 1
/// directions (axes, then the diagonal), take the largest h-isolated
/// component of the symmetric part that every other direction keeps inside
/// one symmetric component, fit a ball to its rim, remove it, and recheck
/// criticality of the remainder. Ends with check_ball_bounds.
RigidityReport extract_balls(const IndicatorGrid& set, const RadialKernel& kernel, const RigidityOptions& options = {});

/// Fills radius/gap checks and the equal-radii flag; returns whether all hold.
/// R_i > eta/2 - slack, pairwise gaps >= r(sigma(diam)) - slack, spread of
/// radii <= radius_spread * h.
bool check_ball_bounds(RigidityReport& report, const RadialKernel& kernel, double diam,
                          const RigidityOptions& options = {});

void write_rigidity_json(std::ostream& out, const RigidityReport& report);

}  // namespace nlc
