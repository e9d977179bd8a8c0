#pragma once

#include "jmgrow/geometry.hpp"
#include "jmgrow/model.hpp"
#include "jmgrow/quadrature.hpp"
#include "jmgrow/speed.hpp"
#include "jmgrow/time_intensity.hpp"

namespace jmgrow {

// Lambda(t) = kappa_d int_0^t (t - s)^d theta(ds), the volume integral that
// drives the shading probability. Closed form for both intensity families.
double big_lambda(const TimeIntensity& theta, int d, double t);

// Probability that a point born at time t is exposed:
// w(t) = exp(-nu_d * Lambda(t)), where nu_d is the d-th speed moment.
double w_of_t(const TimeIntensity& theta, int d, double nu_d, double t);

// E F for the full model (intensity multiplier and window scale included).
double mean_F(const ModelSpec& spec);

struct VarianceBound {
  double value = 0.0;
  // Lower bounds can come out <= 0, in which case they say nothing.
  bool vacuous = false;
};

// Two-sided variance bounds for F. The lower bound may be vacuous; the upper
// bound is always positive.
VarianceBound var_lower_bound(const ModelSpec& spec);
double var_upper_bound(const ModelSpec& spec);

// l_{a,tau}(x) = gamma((tau+1)/(d+tau+1), a^{d+tau+1} x) * x^{-(tau+1)/(d+tau+1)},
// strictly decreasing in x > 0; governs how the variance lower bound scales
// with the d-th speed moment.
double l_a_tau(double a, double tau, int d, double x);

// Q(x, y) = int_0^infty t^x exp(-y Lambda(t)) theta(dt) in closed form.
double q_integral(double x, double y, const TimeIntensity& theta, int d);

// V_nu(W) = sum_{i=0}^{d} V_{d-i}(W) * nu_{d+i}: the window functional that
// appears in all first/second moment bounds with random speeds.
double v_nu(const WindowGeometry& window, const SpeedDistribution& speed);

// Pair-correlation kernel
// ell(t1, t2) = kappa_d^2 nu_2d int_0^{t1 ^ t2} (t1-s)^d (t2-s)^d theta(ds);
// closed form on the diagonal, quadrature off it.
double ell_kernel(double t1, double t2, const TimeIntensity& theta, int d,
                  double nu_2d, const QuadratureSpec& spec = {});

}  // namespace jmgrow
