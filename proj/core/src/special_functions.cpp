#include "jmgrow/special_functions.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "jmgrow/errors.hpp"

namespace jmgrow {

namespace {

constexpr int kMaxIter = 2000;
constexpr double kEps = std::numeric_limits<double>::epsilon();

// Series for P(p, z), converges fast when z < p + 1.
double gamma_p_series(double p, double z) {
  double ap = p;
  double term = 1.0 / p;
  double sum = term;
  for (int n = 0; n < kMaxIter; ++n) {
    ap += 1.0;
    term *= z / ap;
    sum += term;
    if (std::abs(term) < std::abs(sum) * kEps) {
      return sum * std::exp(-z + p * std::log(z) - std::lgamma(p));
    }
  }
  throw DomainError("regularized_gamma_p: series did not converge");
}

// Modified Lentz continued fraction for Q(p, z), for z >= p + 1.
double gamma_q_continued_fraction(double p, double z) {
  const double tiny = 1e-300;
  double b = z + 1.0 - p;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= kMaxIter; ++i) {
    const double an = -static_cast<double>(i) * (static_cast<double>(i) - p);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < kEps) {
      return std::exp(-z + p * std::log(z) - std::lgamma(p)) * h;
    }
  }
  throw DomainError("regularized_gamma_p: continued fraction did not converge");
}

}  // namespace

double regularized_gamma_p(double p, double z) {
  if (!(p > 0.0) || !std::isfinite(p)) {
    throw DomainError("regularized_gamma_p: p must be finite and > 0, got " + std::to_string(p));
  }
  if (!(z >= 0.0) || !std::isfinite(z)) {
    throw DomainError("regularized_gamma_p: z must be finite and >= 0, got " + std::to_string(z));
  }
  if (z == 0.0) return 0.0;
  if (z < p + 1.0) return gamma_p_series(p, z);
  return 1.0 - gamma_q_continued_fraction(p, z);
}

double lower_incomplete_gamma(double p, double z) {
  return regularized_gamma_p(p, z) * std::tgamma(p);
}

double log_gamma(double p) {
  if (!(p > 0.0)) throw DomainError("log_gamma: p must be > 0");
  return std::lgamma(p);
}

double log_beta(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw DomainError("log_beta: arguments must be > 0");
  return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

double beta_function(double a, double b) { return std::exp(log_beta(a, b)); }

double unit_ball_volume(int j) {
  if (j < 0) throw DomainError("unit_ball_volume: dimension must be >= 0");
  const double half = 0.5 * static_cast<double>(j);
  return std::pow(M_PI, half) / std::tgamma(half + 1.0);
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x * M_SQRT1_2); }

double normal_pdf(double x) {
  return std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI);
}

double normal_quantile(double q) {
  if (!(q > 0.0) || !(q < 1.0)) {
    throw DomainError("normal_quantile: q must lie in (0, 1), got " + std::to_string(q));
  }
  // Acklam's rational approximation, then one Halley step to push the result
  // to full double precision.
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double p_low = 0.02425;
  double x;
  if (q < p_low) {
    const double r = std::sqrt(-2.0 * std::log(q));
    x = (((((c[0] * r + c[1]) * r + c[2]) * r + c[3]) * r + c[4]) * r + c[5]) /
        ((((d[0] * r + d[1]) * r + d[2]) * r + d[3]) * r + 1.0);
  } else if (q <= 1.0 - p_low) {
    const double r = q - 0.5;
    const double t = r * r;
    x = (((((a[0] * t + a[1]) * t + a[2]) * t + a[3]) * t + a[4]) * t + a[5]) * r /
        (((((b[0] * t + b[1]) * t + b[2]) * t + b[3]) * t + b[4]) * t + 1.0);
  } else {
    const double r = std::sqrt(-2.0 * std::log(1.0 - q));
    x = -(((((c[0] * r + c[1]) * r + c[2]) * r + c[3]) * r + c[4]) * r + c[5]) /
        ((((d[0] * r + d[1]) * r + d[2]) * r + d[3]) * r + 1.0);
  }
  const double e = normal_cdf(x) - q;
  const double u = e * std::sqrt(2.0 * M_PI) * std::exp(0.5 * x * x);
  x -= u / (1.0 + 0.5 * x * u);
  return x;
}

double chi_square_quantile(double prob, double dof) {
  if (!(prob > 0.0) || !(prob < 1.0)) {
    throw DomainError("chi_square_quantile: prob must lie in (0, 1)");
  }
  if (!(dof > 0.0)) throw DomainError("chi_square_quantile: dof must be > 0");
  const double p = 0.5 * dof;
  // Bracket the root of P(p, x/2) = prob around the mean, then bisect.
  double lo = 0.0;
  double hi = dof + 10.0 * std::sqrt(2.0 * dof) + 10.0;
  while (regularized_gamma_p(p, 0.5 * hi) < prob) {
    hi *= 2.0;
    if (hi > 1e300) throw DomainError("chi_square_quantile: bracket failed");
  }
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (regularized_gamma_p(p, 0.5 * mid) < prob) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo <= 1e-13 * (1.0 + hi)) break;
  }
  return 0.5 * (lo + hi);
}

}  // namespace jmgrow
