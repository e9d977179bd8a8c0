#include "jmgrow/speed.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "jmgrow/errors.hpp"

namespace jmgrow {

namespace {

// (hi^beta - lo^beta) / beta, continued through beta = 0 as log(hi/lo).
// Written via expm1 so it stays accurate when beta is tiny.
double power_difference_over_exponent(double beta, double lo, double hi) {
  const double l = std::log(hi / lo);
  if (beta == 0.0) return l;
  return std::pow(lo, beta) * std::expm1(beta * l) / beta;
}

// Draw from the density proportional to v^{beta-1} on [lo, hi].
double sample_power_density(double beta, double lo, double hi, RngStream& rng) {
  const double u = rng.uniform();
  if (beta == 0.0) return lo * std::pow(hi / lo, u);
  const double lb = std::pow(lo, beta);
  const double hb = std::pow(hi, beta);
  return std::pow(lb + u * (hb - lb), 1.0 / beta);
}

}  // namespace

SpeedDistribution SpeedDistribution::point_mass(double c) {
  if (!(c > 0.0) || !std::isfinite(c)) {
    throw DomainError("SpeedDistribution::point_mass: value must be finite and > 0");
  }
  SpeedDistribution s;
  s.kind_ = SpeedKind::PointMass;
  s.a_ = c;
  return s;
}

SpeedDistribution SpeedDistribution::finite_discrete(std::vector<double> values,
                                                     std::vector<double> probabilities) {
  if (values.empty() || values.size() != probabilities.size()) {
    throw DomainError("SpeedDistribution::finite_discrete: need matching nonempty vectors");
  }
  double total = 0.0;
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (!(values[k] > 0.0) || !std::isfinite(values[k])) {
      throw DomainError("SpeedDistribution::finite_discrete: values must be finite and > 0");
    }
    if (!(probabilities[k] > 0.0)) {
      throw DomainError("SpeedDistribution::finite_discrete: probabilities must be > 0");
    }
    total += probabilities[k];
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw DomainError("SpeedDistribution::finite_discrete: probabilities must sum to 1");
  }
  for (double& p : probabilities) p /= total;
  SpeedDistribution s;
  s.kind_ = SpeedKind::FiniteDiscrete;
  s.values_ = std::move(values);
  s.probs_ = std::move(probabilities);
  return s;
}

SpeedDistribution SpeedDistribution::uniform(double b) {
  if (!(b > 0.0) || !std::isfinite(b)) {
    throw DomainError("SpeedDistribution::uniform: upper bound must be finite and > 0");
  }
  SpeedDistribution s;
  s.kind_ = SpeedKind::Uniform;
  s.a_ = b;
  return s;
}

SpeedDistribution SpeedDistribution::truncated_pareto(double alpha, double x_min,
                                                      double x_max) {
  if (!(alpha > 0.0) || !(x_min > 0.0) || !(x_max > x_min) || !std::isfinite(x_max)) {
    throw DomainError(
        "SpeedDistribution::truncated_pareto: need alpha > 0 and 0 < x_min < x_max < inf");
  }
  SpeedDistribution s;
  s.kind_ = SpeedKind::TruncatedPareto;
  s.a_ = alpha;
  s.b_ = x_min;
  s.c_ = x_max;
  return s;
}

SpeedDistribution SpeedDistribution::log_normal(double mu, double sigma) {
  if (!std::isfinite(mu) || !(sigma > 0.0) || !std::isfinite(sigma)) {
    throw DomainError("SpeedDistribution::log_normal: need finite mu and sigma > 0");
  }
  SpeedDistribution s;
  s.kind_ = SpeedKind::LogNormal;
  s.a_ = mu;
  s.b_ = sigma;
  return s;
}

double SpeedDistribution::moment(double u) const {
  if (!(u >= 0.0)) throw DomainError("SpeedDistribution::moment: order must be >= 0");
  double m = 0.0;
  switch (kind_) {
    case SpeedKind::PointMass:
      m = std::pow(a_, u);
      break;
    case SpeedKind::FiniteDiscrete:
      for (std::size_t k = 0; k < values_.size(); ++k) {
        m += probs_[k] * std::pow(values_[k], u);
      }
      break;
    case SpeedKind::Uniform:
      m = std::pow(a_, u) / (u + 1.0);
      break;
    case SpeedKind::TruncatedPareto: {
      // Density alpha x_min^alpha v^{-alpha-1} / (1 - (x_min/x_max)^alpha).
      const double norm =
          a_ * std::pow(b_, a_) / (1.0 - std::pow(b_ / c_, a_));
      m = norm * power_difference_over_exponent(u - a_, b_, c_);
      break;
    }
    case SpeedKind::LogNormal:
      m = std::exp(u * a_ + 0.5 * u * u * b_ * b_);
      break;
  }
  if (!std::isfinite(m)) {
    throw InfiniteMomentError("speed moment of order " + std::to_string(u) +
                              " is not finite");
  }
  return m;
}

double SpeedDistribution::sample(RngStream& rng) const {
  return size_biased_sample(0, rng);
}

double SpeedDistribution::size_biased_sample(int order, RngStream& rng) const {
  if (order < 0) throw DomainError("size_biased_sample: order must be >= 0");
  const double i = static_cast<double>(order);
  switch (kind_) {
    case SpeedKind::PointMass:
      return a_;
    case SpeedKind::FiniteDiscrete: {
      // Reweight p_k -> p_k v_k^i and invert the CDF.
      double total = 0.0;
      std::vector<double> w(values_.size());
      for (std::size_t k = 0; k < values_.size(); ++k) {
        w[k] = probs_[k] * std::pow(values_[k], i);
        total += w[k];
      }
      double u = rng.uniform() * total;
      for (std::size_t k = 0; k + 1 < values_.size(); ++k) {
        if (u < w[k]) return values_[k];
        u -= w[k];
      }
      return values_.back();
    }
    case SpeedKind::Uniform:
      // Density (i+1) v^i / b^{i+1} on (0, b].
      return a_ * std::pow(rng.uniform(), 1.0 / (i + 1.0));
    case SpeedKind::TruncatedPareto:
      // v^i * v^{-alpha-1} = v^{(i-alpha)-1}.
      return sample_power_density(i - a_, b_, c_, rng);
    case SpeedKind::LogNormal:
      // Exponential tilting: size-biasing a lognormal shifts mu by i sigma^2.
      return std::exp(a_ + i * b_ * b_ + b_ * rng.normal());
  }
  throw DomainError("size_biased_sample: unreachable");
}

}  // namespace jmgrow
