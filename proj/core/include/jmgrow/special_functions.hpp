#pragma once

namespace jmgrow {

// Lower incomplete gamma gamma(p, z) = int_0^z u^{p-1} e^{-u} du, p > 0, z >= 0.
double lower_incomplete_gamma(double p, double z);

// Regularized P(p, z) = gamma(p, z) / Gamma(p), computed in log space so it
// stays accurate for large p (chi-square quantiles with thousands of dof).
double regularized_gamma_p(double p, double z);

// log Gamma(p), p > 0. Thin wrapper kept for symmetry with log_beta.
double log_gamma(double p);

// Euler beta B(a, b) and its log, a, b > 0.
double log_beta(double a, double b);
double beta_function(double a, double b);

// Volume of the unit ball in R^j; j = 0 gives 1.
double unit_ball_volume(int j);

// Standard normal CDF and its inverse. normal_quantile requires q in (0, 1).
double normal_cdf(double x);
double normal_pdf(double x);
double normal_quantile(double q);

// Quantile of the chi-square distribution with dof degrees of freedom,
// prob in (0, 1). Solved by bisection on the regularized gamma.
double chi_square_quantile(double prob, double dof);

}  // namespace jmgrow
