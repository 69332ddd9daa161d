#pragma once

#include <span>
#include <utility>
#include <vector>

namespace nlc {

enum class ProfileFamily { power, step, indicator, table };

const char* to_string(ProfileFamily family);

/// Outcome of the tail test for int_1^inf r(s)^(d-1) ds.
struct IntegrabilityCheck {
  bool converges = false;
  /// Value of the tail integral; +inf when divergent.
  double tail = 0.0;
  /// True when the answer came from numeric quadrature rather than a closed form.
  bool numeric = false;
};

struct IntegrabilityOptions {
  /// Partial tail exceeding cap * (first nonzero panel) is reported divergent.
  double divergence_cap = 1e6;
  int max_panels = 400;
};

/// Volume of the unit ball in R^d.
double unit_ball_volume(int dim);

/// A radially symmetric, non-increasing, non-negative, locally integrable
/// kernel h(x) = phi(|x|) on R^d.
///
/// Piecewise-constant families (step, indicator, table) share one normalized
/// representation: strictly decreasing positive levels v_1 > ... > v_N on the
/// radial pieces [r_{i-1}, r_i), with r_0 = 0 and phi = 0 past r_N. All
/// derived quantities of those families are exact finite arithmetic.
///
/// Objects are immutable; every member is safe to call concurrently.
class RadialKernel {
 public:
  /// phi(t) = t^(-alpha); requires 0 < alpha < dim.
  static RadialKernel power(double alpha, int dim);
  /// phi = levels[i] on [radii[i-1], radii[i]); levels strictly decreasing and
  /// positive, radii strictly increasing and positive.
  static RadialKernel step(std::vector<double> levels, std::vector<double> radii, int dim);
  /// phi = chi_[0, radius).
  static RadialKernel indicator(double radius, int dim);
  /// Tabulated non-increasing piecewise-constant profile. Each pair is
  /// (right endpoint t_i, value on [t_{i-1}, t_i)). Equal neighbouring values
  /// are merged and trailing zeros dropped.
  static RadialKernel table(const std::vector<std::pair<double, double>>& pieces, int dim);

  ProfileFamily family() const { return family_; }
  int dimension() const { return dim_; }
  bool bounded() const { return family_ != ProfileFamily::power; }
  bool piecewise_constant() const { return family_ != ProfileFamily::power; }

  double ess_sup() const;
  /// Power exponent; only meaningful for the power family.
  double exponent() const { return alpha_; }
  /// Right endpoints r_1 < ... < r_N of the constant pieces (empty for power).
  std::span<const double> radii() const { return radii_; }
  /// Values v_1 > ... > v_N of the constant pieces (empty for power).
  std::span<const double> levels() const { return levels_; }

  /// phi(t). Throws std::domain_error for t < 0. For the power family
  /// phi(0) = +inf.
  double eval(double t) const;

  /// r(s) = L^1({t >= 0 : phi(t) > s}). Throws std::domain_error for s < 0.
  double distribution(double s) const;
  /// Left limit r(s^-) = L^1({phi >= s}) for s > 0.
  double distribution_left(double s) const;

  /// r(0) = L^1(supp phi); +inf for the power family.
  double support_radius() const;

  /// eta = L^1({phi = ess sup phi}); 0 for unbounded profiles.
  double plateau_eta() const;

  /// sigma = 0 if diam >= r(0), else phi(diam).
  double sigma_level(double diam) const;

  /// sup{ s >= 0 : r(s) > lambda }, with sup of the empty set taken as 0.
  double s_of_lambda(double lambda) const;

  IntegrabilityCheck improved_integrability(const IntegrabilityOptions& options = {}) const;

  /// Integral of h over the centred ball of radius rho.
  double ball_mass(double rho) const;
  /// Integral of h over R^d; +inf when h is not globally integrable.
  double l1_norm() const;

 private:
  RadialKernel() = default;
  void validate_local_integrability() const;
  IntegrabilityCheck numeric_tail(const IntegrabilityOptions& options) const;

  ProfileFamily family_ = ProfileFamily::step;
  int dim_ = 1;
  double alpha_ = 0.0;
  std::vector<double> levels_;
  std::vector<double> radii_;
};

}  // namespace nlc
