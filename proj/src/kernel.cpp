#include "nlc/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace nlc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_dimension(int dim) {
  if (dim < 1 || dim > 3) {
    throw std::invalid_argument("kernel dimension must be 1, 2 or 3, got " + std::to_string(dim));
  }
}

double pow_dm1(double r, int dim) {
  // r^(d-1) with the d = 1 convention r^0 = 1 on {r > 0}.
  if (r <= 0.0) return 0.0;
  return std::pow(r, dim - 1);
}

// Adaptive Simpson; f is bounded on [a, b].
template <class F>
double simpson(const F& f, double a, double b, double fa, double fm, double fb, double whole, double tol,
               int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

template <class F>
double integrate(const F& f, double a, double b, double tol) {
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson(f, a, b, fa, fm, fb, whole, tol, 48);
}

}  // namespace

const char* to_string(ProfileFamily family) {
  switch (family) {
    case ProfileFamily::power: return "power";
    case ProfileFamily::step: return "step";
    case ProfileFamily::indicator: return "indicator";
    case ProfileFamily::table: return "table";
  }
  return "unknown";
}

double unit_ball_volume(int dim) {
  switch (dim) {
    case 1: return 2.0;
    case 2: return std::numbers::pi;
    case 3: return 4.0 * std::numbers::pi / 3.0;
  }
  return std::pow(std::numbers::pi, 0.5 * dim) / std::tgamma(0.5 * dim + 1.0);
}

RadialKernel RadialKernel::power(double alpha, int dim) {
  require_dimension(dim);
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw std::invalid_argument("power kernel exponent must be positive and finite");
  }
  RadialKernel k;
  k.family_ = ProfileFamily::power;
  k.dim_ = dim;
  k.alpha_ = alpha;
  k.validate_local_integrability();
  return k;
}

RadialKernel RadialKernel::step(std::vector<double> levels, std::vector<double> radii, int dim) {
  require_dimension(dim);
  if (levels.empty() || levels.size() != radii.size()) {
    throw std::invalid_argument("step kernel needs equally many levels and radii (at least one)");
  }
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (!(levels[i] > 0.0) || !std::isfinite(levels[i])) {
      throw std::invalid_argument("step kernel levels must be positive and finite");
    }
    if (!(radii[i] > 0.0) || !std::isfinite(radii[i])) {
      throw std::invalid_argument("step kernel radii must be positive and finite");
    }
    if (i > 0 && !(levels[i] < levels[i - 1])) {
      throw std::invalid_argument("step kernel levels must be strictly decreasing");
    }
    if (i > 0 && !(radii[i] > radii[i - 1])) {
      throw std::invalid_argument("step kernel radii must be strictly increasing");
    }
  }
  RadialKernel k;
  k.family_ = ProfileFamily::step;
  k.dim_ = dim;
  k.levels_ = std::move(levels);
  k.radii_ = std::move(radii);
  k.validate_local_integrability();
  return k;
}

RadialKernel RadialKernel::indicator(double radius, int dim) {
  require_dimension(dim);
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw std::invalid_argument("indicator kernel radius must be positive and finite");
  }
  RadialKernel k;
  k.family_ = ProfileFamily::indicator;
  k.dim_ = dim;
  k.levels_ = {1.0};
  k.radii_ = {radius};
  return k;
}

RadialKernel RadialKernel::table(const std::vector<std::pair<double, double>>& pieces, int dim) {
  require_dimension(dim);
  if (pieces.empty()) throw std::invalid_argument("table kernel needs at least one (t, phi) pair");
  RadialKernel k;
  k.family_ = ProfileFamily::table;
  k.dim_ = dim;
  double prev_t = 0.0;
  double prev_v = kInf;
  for (const auto& [t, v] : pieces) {
    if (!(t > prev_t) || !std::isfinite(t)) {
      throw std::invalid_argument("table kernel radii must be positive and strictly increasing");
    }
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw std::invalid_argument("table kernel values must be non-negative and finite");
    }
    if (v > prev_v) throw std::invalid_argument("table kernel profile must be non-increasing");
    if (!k.levels_.empty() && v == k.levels_.back()) {
      k.radii_.back() = t;
    } else if (v > 0.0) {
      k.levels_.push_back(v);
      k.radii_.push_back(t);
    }
    prev_t = t;
    prev_v = v;
  }
  if (k.levels_.empty()) throw std::invalid_argument("table kernel is identically zero");
  k.validate_local_integrability();
  return k;
}

void RadialKernel::validate_local_integrability() const {
  if (family_ == ProfileFamily::power) {
    // int_0^1 t^(d-1-alpha) dt is finite iff alpha < d.
    if (!(alpha_ < dim_)) {
      throw std::invalid_argument("power kernel with alpha >= d is not locally integrable");
    }
    return;
  }
  constexpr int kPanels = 10000;
  const double width = 1.0 / kPanels;
  double sum = 0.0;
  for (int i = 0; i < kPanels; ++i) {
    const double t = (i + 0.5) * width;
    sum += eval(t) * std::pow(t, dim_ - 1) * width;
  }
  if (!std::isfinite(sum)) throw std::invalid_argument("kernel profile is not locally integrable");
}

double RadialKernel::ess_sup() const {
  if (family_ == ProfileFamily::power) return kInf;
  return levels_.front();
}

double RadialKernel::eval(double t) const {
  if (!(t >= 0.0)) throw std::domain_error("profile evaluated at a negative radius");
  if (family_ == ProfileFamily::power) {
    if (t == 0.0) return kInf;
    return std::pow(t, -alpha_);
  }
  const auto it = std::upper_bound(radii_.begin(), radii_.end(), t);
  if (it == radii_.end()) return 0.0;
  return levels_[static_cast<std::size_t>(it - radii_.begin())];
}

double RadialKernel::distribution(double s) const {
  if (!(s >= 0.0)) throw std::domain_error("distribution function evaluated at a negative level");
  if (family_ == ProfileFamily::power) {
    if (s == 0.0) return kInf;
    return std::pow(s, -1.0 / alpha_);
  }
  // Number of pieces whose value strictly exceeds s; levels are decreasing.
  std::size_t above = 0;
  while (above < levels_.size() && levels_[above] > s) ++above;
  return above == 0 ? 0.0 : radii_[above - 1];
}

double RadialKernel::distribution_left(double s) const {
  if (!(s > 0.0)) return distribution(0.0);
  if (family_ == ProfileFamily::power) return distribution(s);
  std::size_t at_least = 0;
  while (at_least < levels_.size() && levels_[at_least] >= s) ++at_least;
  return at_least == 0 ? 0.0 : radii_[at_least - 1];
}

double RadialKernel::support_radius() const {
  if (family_ == ProfileFamily::power) return kInf;
  return radii_.back();
}

double RadialKernel::plateau_eta() const {
  if (family_ == ProfileFamily::power) return 0.0;
  return radii_.front();
}

double RadialKernel::sigma_level(double diam) const {
  if (!(diam >= 0.0)) throw std::domain_error("sigma_level needs a non-negative diameter");
  if (diam >= support_radius()) return 0.0;
  return eval(diam);
}

double RadialKernel::s_of_lambda(double lambda) const {
  if (!(lambda >= 0.0)) throw std::domain_error("s_of_lambda needs a non-negative length");
  if (family_ == ProfileFamily::power) {
    // r(s) > lambda  <=>  s < lambda^(-alpha)
    if (lambda == 0.0) return kInf;
    return std::pow(lambda, -alpha_);
  }
  // r(s) = r_k on [v_{k+1}, v_k): the admissible levels are those below the
  // value of the first piece whose right endpoint exceeds lambda.
  for (std::size_t k = 0; k < radii_.size(); ++k) {
    if (radii_[k] > lambda) return levels_[k];
  }
  return 0.0;
}

IntegrabilityCheck RadialKernel::improved_integrability(const IntegrabilityOptions& options) const {
  if (family_ == ProfileFamily::power) {
    // r(s)^(d-1) = s^(-(d-1)/alpha), integrable on [1, inf) iff alpha < d - 1.
    const double decay = (dim_ - 1) / alpha_;
    if (decay > 1.0) return {true, 1.0 / (decay - 1.0), false};
    return {false, kInf, false};
  }
  if (family_ == ProfileFamily::table) return numeric_tail(options);
  // Exact: r = r_i on [v_{i+1}, v_i) with v_{N+1} = 0.
  double tail = 0.0;
  for (std::size_t i = 0; i < levels_.size(); ++i) {
    const double hi = levels_[i];
    const double lo = std::max(1.0, i + 1 < levels_.size() ? levels_[i + 1] : 0.0);
    if (hi > lo) tail += pow_dm1(radii_[i], dim_) * (hi - lo);
  }
  return {true, tail, false};
}

IntegrabilityCheck RadialKernel::numeric_tail(const IntegrabilityOptions& options) const {
  const auto integrand = [this](double s) { return pow_dm1(distribution(s), dim_); };
  double total = 0.0;
  double first = 0.0;
  double a = 1.0;
  for (int panel = 0; panel < options.max_panels; ++panel) {
    const double b = 2.0 * a;
    const double part = integrate(integrand, a, b, 1e-13 * (b - a));
    total += part;
    if (first == 0.0 && part > 0.0) first = part;
    if (first > 0.0 && total > options.divergence_cap * first) return {false, kInf, true};
    // Past the essential supremum the integrand vanishes identically.
    if (b >= ess_sup()) return {true, total, true};
    a = b;
  }
  return {false, kInf, true};
}

double RadialKernel::ball_mass(double rho) const {
  if (!(rho >= 0.0)) throw std::domain_error("ball_mass needs a non-negative radius");
  const double omega = unit_ball_volume(dim_);
  if (family_ == ProfileFamily::power) {
    // d * omega_d * int_0^rho t^(d-1-alpha) dt
    return dim_ * omega * std::pow(rho, dim_ - alpha_) / (dim_ - alpha_);
  }
  double mass = 0.0;
  double inner = 0.0;
  for (std::size_t i = 0; i < levels_.size() && inner < rho; ++i) {
    const double outer = std::min(radii_[i], rho);
    mass += levels_[i] * omega * (std::pow(outer, dim_) - std::pow(inner, dim_));
    inner = radii_[i];
  }
  return mass;
}

double RadialKernel::l1_norm() const {
  if (family_ == ProfileFamily::power) return kInf;
  return ball_mass(radii_.back());
}

}  // namespace nlc
