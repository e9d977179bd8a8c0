#pragma once

#include <cmath>

#include "jmgrow/errors.hpp"
#include "jmgrow/quadrature.hpp"

namespace jmgrow {

// Birth-time intensity measure theta on [0, infinity): either Lebesgue
// measure or the power law theta(dt) = t^tau dt with tau > -1.
class TimeIntensity {
 public:
  static TimeIntensity lebesgue() { return TimeIntensity(true, 0.0); }

  static TimeIntensity power_law(double tau) {
    if (!(tau > -1.0) || !std::isfinite(tau)) {
      throw DomainError("TimeIntensity::power_law: tau must be finite and > -1");
    }
    return TimeIntensity(false, tau);
  }

  bool is_lebesgue() const { return lebesgue_; }

  // Density exponent; 0 for Lebesgue (which is the tau = 0 power law).
  double tau() const { return tau_; }

  double density(double t) const {
    if (lebesgue_ || tau_ == 0.0) return 1.0;
    return std::pow(t, tau_);
  }

  bool operator==(const TimeIntensity&) const = default;

 private:
  TimeIntensity(bool lebesgue, double tau) : lebesgue_(lebesgue), tau_(tau) {}

  bool lebesgue_;
  double tau_;
};

// int_{lo}^{hi} f(t) theta(dt). For tau < 0 the density blows up at 0, so we
// substitute u = t^{tau+1}/(tau+1), which turns theta into Lebesgue measure
// in u and removes the endpoint singularity.
template <class F>
double integrate_theta(const TimeIntensity& theta, F&& f, double lo, double hi,
                       const QuadratureSpec& spec = {}) {
  if (!(lo >= 0.0)) throw DomainError("integrate_theta: bounds must be >= 0");
  if (lo >= hi) return 0.0;
  const double tau = theta.tau();
  if (tau < 0.0) {
    const double p = tau + 1.0;
    const double u_lo = std::pow(lo, p) / p;
    const double u_hi = std::pow(hi, p) / p;
    return integrate(
        [&f, p](double u) { return f(std::pow(p * u, 1.0 / p)); }, u_lo, u_hi, spec);
  }
  return integrate([&](double t) { return f(t) * theta.density(t); }, lo, hi, spec);
}

}  // namespace jmgrow
