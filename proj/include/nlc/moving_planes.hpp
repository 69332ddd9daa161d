#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "nlc/grid.hpp"
#include "nlc/kernel.hpp"

namespace nlc {

struct SweepOptions {
  /// Sweep step; 0 selects the grid spacing.
  double step = 0.0;
  /// Bisection halvings of the bracketing step (3 gives step / 8).
  int refinements = 3;
  /// Allowed |R_t \ Omega| as a multiple of (cells on the inner boundary layer of Omega_t) * h^d.
  double inclusion_layers = 0.25;
  /// When positive, overrides the above with |R_t \ Omega| <= tol * |Omega_t|.
  double inclusion_tol = 0.0;
  /// Slab half-widths and the Steiner tolerance, in units of the spacing.
  double away_slab = 2.0;
  double close_slab = 3.0;
  double steiner_tol = 2.0;
};

struct InclusionResult {
  bool holds = true;
  /// |R_t \ Omega|
  double excess_measure = 0.0;
  double tolerance = 0.0;
  /// |Omega_t|
  double clipped_measure = 0.0;
  SteinerCheck steiner;
};

/// Omega_t = Omega on the "-" side of H_t = {<x, nu> = t}; R_t its mirror
/// image (cells strictly on the "+" side whose mirrored centre falls in a
/// cell of Omega_t).
InclusionResult symmetric_inclusion(const IndicatorGrid& set, const Point& nu, double t,
                                    const SweepOptions& options = {});
/// Cells of R_t farther than away_slab * h from H_t that touch the
/// complement of Omega (3^d neighbourhood).
std::vector<Point> find_away_contacts(const IndicatorGrid& set, const Point& nu, double t,
                                      const SweepOptions& options = {});
/// Points of H_t whose nu-line carries two or more boundary samples of Omega
/// within close_slab * h on the "+" side.
std::vector<Point> find_close_contacts(const IndicatorGrid& set, const Point& nu, double t,
                                       const SweepOptions& options = {});

enum class SweepStatus { stopped, degenerate_start, symmetric_to_end };
const char* to_string(SweepStatus status);

struct SweepSample {
  double t = 0.0;
  bool inclusion = true;
  double excess_measure = 0.0;
  std::size_t away_count = 0;
  std::size_t close_count = 0;
};

struct SweepReport {
  int dim = 2;
  Point direction{};
  /// Last offset at which symmetric inclusion holds.
  double T = 0.0;
  SweepStatus status = SweepStatus::stopped;
  double start = 0.0;
  double end = 0.0;
  /// Every tested offset, ascending.
  std::vector<SweepSample> samples;
  /// Contacts at T.
  std::vector<Point> away_contacts;
  std::vector<Point> close_contacts;
  /// Smallest tested offset with an away contact (NaN when none).
  double first_away = 0.0;
};

/// Sweeps H_t from below the set along nu (normalized internally) in steps of
/// options.step, stopping at the first offset where symmetric inclusion
/// fails, then bisects the bracket. Away contacts are recorded per offset as
/// diagnostics; see README for why they do not stop the sweep.
SweepReport stopping_time(const IndicatorGrid& set, const Point& nu, const SweepOptions& options = {});

struct Decomposition {
  IndicatorGrid symmetric;
  IndicatorGrid nonsymmetric;
  Components components;
  /// Per component of the symmetric part: distance to the nearest
  /// non-negligible component of the non-symmetric part (+inf if none).
  std::vector<double> separation;
  /// Per component: separation < r(sigma) - 2h.
  std::vector<bool> separation_violated;
  double r_sigma = 0.0;
  bool no_contacts = false;
};

/// Omega^s: occupied cells on nu-lines crossed by R_T, within the far end of
/// R_T on either side of H_T; Omega^ns the rest.
Decomposition decompose(const IndicatorGrid& set, const SweepReport& report, const RadialKernel& kernel,
                        const SweepOptions& options = {});

struct ContactGraph {
  std::size_t n = 0;
  std::vector<std::uint8_t> adjacency;

  bool edge(std::size_t i, std::size_t j) const { return adjacency[i * n + j] != 0; }
  std::vector<std::size_t> isolated() const;
};

/// Component i is in h-contact with j when some away-contact pair (p, p')
/// of i has sum over Omega^s_j of |h_p - h_p'| > 0. The relation is
/// symmetrized.
ContactGraph classify_h_contact(const Decomposition& decomposition, const SweepReport& report,
                                const RadialKernel& kernel);

void write_sweep_csv(std::ostream& out, const SweepReport& report);

}  // namespace nlc
