#include "jmgrow/analytic.hpp"

#include <cmath>
#include <string>

#include "jmgrow/errors.hpp"
#include "jmgrow/special_functions.hpp"

namespace jmgrow {

namespace {

void require_dimension(int d) {
  if (d < 1) throw DomainError("dimension must be >= 1");
}

}  // namespace

double big_lambda(const TimeIntensity& theta, int d, double t) {
  require_dimension(d);
  if (!(t >= 0.0)) throw DomainError("big_lambda: t must be >= 0");
  const double tau = theta.tau();
  // int_0^t (t-s)^d s^tau ds = B(d+1, tau+1) t^{d+tau+1}; tau = 0 covers
  // Lebesgue since B(d+1, 1) = 1/(d+1).
  return unit_ball_volume(d) * beta_function(d + 1.0, tau + 1.0) *
         std::pow(t, d + tau + 1.0);
}

double w_of_t(const TimeIntensity& theta, int d, double nu_d, double t) {
  if (!(nu_d > 0.0) || !std::isfinite(nu_d)) {
    throw DomainError("w_of_t: nu_d must be finite and > 0");
  }
  return std::exp(-nu_d * big_lambda(theta, d, t));
}

double mean_F(const ModelSpec& spec) {
  validate(spec);
  const int d = spec.dimension;
  const double s = spec.intensity_multiplier;
  const double nu_d = spec.speed.moment(static_cast<double>(d));
  const double lam_w = spec.effective_window().volume();
  const auto& theta = spec.time_intensity;
  auto w = [&](double t) { return std::exp(-s * nu_d * big_lambda(theta, d, t)); };
  return s * lam_w * integrate_theta(theta, w, 0.0, spec.horizon, spec.quadrature);
}

VarianceBound var_lower_bound(const ModelSpec& spec) {
  validate(spec);
  const int d = spec.dimension;
  const double a = spec.horizon;
  const double s = spec.intensity_multiplier;
  const double nu_d = spec.speed.moment(static_cast<double>(d));
  const double lam_w = spec.effective_window().volume();
  const double kappa = unit_ball_volume(d);
  const auto& theta = spec.time_intensity;
  const auto quad = spec.quadrature;

  auto w = [&](double t) { return std::exp(-s * nu_d * big_lambda(theta, d, t)); };

  const double term1 = integrate_theta(theta, w, 0.0, a, quad);
  auto inner = [&](double t) {
    return integrate_theta(
        theta, [&](double u) { return std::pow(t - u, d) * w(u); }, 0.0, t,
        quad.tightened());
  };
  const double term2 = integrate_theta(
      theta, [&](double t) { return inner(t) * w(t); }, 0.0, a, quad);

  const double value = lam_w * (s * term1 - 2.0 * kappa * nu_d * s * s * term2);
  return {value, value <= 0.0};
}

double var_upper_bound(const ModelSpec& spec) {
  validate(spec);
  const int d = spec.dimension;
  const double a = spec.horizon;
  const double s = spec.intensity_multiplier;
  const double nu_d = spec.speed.moment(static_cast<double>(d));
  const double nu_2d = spec.speed.moment(2.0 * static_cast<double>(d));
  const double lam_w = spec.effective_window().volume();
  const double kappa = unit_ball_volume(d);
  const auto& theta = spec.time_intensity;
  const auto quad = spec.quadrature;

  auto w_half = [&](double t) {
    return std::exp(-0.5 * s * nu_d * big_lambda(theta, d, t));
  };

  const double term1 = 2.0 * s * integrate_theta(theta, w_half, 0.0, a, quad);
  // The triple integral factorizes: for fixed s', the two later-born times
  // integrate independently.
  auto g = [&](double u) {
    return integrate_theta(
        theta, [&](double t) { return std::pow(t - u, d) * w_half(t); }, u, a,
        quad.tightened());
  };
  const double term2 =
      kappa * kappa * nu_2d * s * s * s *
      integrate_theta(theta, [&](double u) { const double gu = g(u); return gu * gu; },
                      0.0, a, quad);

  return lam_w * (term1 + term2);
}

double l_a_tau(double a, double tau, int d, double x) {
  require_dimension(d);
  if (!(a > 0.0)) throw DomainError("l_a_tau: a must be > 0");
  if (!(tau > -1.0)) throw DomainError("l_a_tau: tau must be > -1");
  if (!(x > 0.0)) throw DomainError("l_a_tau: x must be > 0");
  const double p = (tau + 1.0) / (d + tau + 1.0);
  return lower_incomplete_gamma(p, std::pow(a, d + tau + 1.0) * x) * std::pow(x, -p);
}

double q_integral(double x, double y, const TimeIntensity& theta, int d) {
  require_dimension(d);
  if (!(x >= 0.0)) throw DomainError("q_integral: x must be >= 0");
  if (!(y > 0.0)) throw DomainError("q_integral: y must be > 0");
  const double tau = theta.tau();
  const double e = (x + tau + 1.0) / (d + tau + 1.0);
  const double c =
      y * unit_ball_volume(d) * beta_function(d + 1.0, tau + 1.0);
  return std::pow(c, -e) * std::tgamma(e) / (d + tau + 1.0);
}

double v_nu(const WindowGeometry& window, const SpeedDistribution& speed) {
  const int d = window.dimension();
  double sum = 0.0;
  for (int i = 0; i <= d; ++i) {
    sum += window.intrinsic_volume(d - i) * speed.moment(static_cast<double>(d + i));
  }
  return sum;
}

double ell_kernel(double t1, double t2, const TimeIntensity& theta, int d,
                  double nu_2d, const QuadratureSpec& spec) {
  require_dimension(d);
  if (!(t1 >= 0.0) || !(t2 >= 0.0)) throw DomainError("ell_kernel: times must be >= 0");
  if (!(nu_2d > 0.0)) throw DomainError("ell_kernel: nu_2d must be > 0");
  const double t_min = std::min(t1, t2);
  if (t_min == 0.0) return 0.0;
  const double kappa = unit_ball_volume(d);
  const double tau = theta.tau();
  if (t1 == t2) {
    return kappa * kappa * nu_2d * beta_function(2.0 * d + 1.0, tau + 1.0) *
           std::pow(t1, 2.0 * d + tau + 1.0);
  }
  return kappa * kappa * nu_2d *
         integrate_theta(
             theta,
             [&](double u) { return std::pow(t1 - u, d) * std::pow(t2 - u, d); }, 0.0,
             t_min, spec);
}

}  // namespace jmgrow
