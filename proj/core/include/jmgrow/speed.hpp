#pragma once

#include <vector>

#include "jmgrow/rng.hpp"

namespace jmgrow {

enum class SpeedKind { PointMass, FiniteDiscrete, Uniform, TruncatedPareto, LogNormal };

// Growth-speed distribution nu on (0, infinity). Every supported family has
// closed-form moments and an exact sampler for the size-biased versions
// nu_i(dv) proportional to v^i nu(dv), which the point-process sampler needs.
class SpeedDistribution {
 public:
  static SpeedDistribution point_mass(double c);
  static SpeedDistribution finite_discrete(std::vector<double> values,
                                           std::vector<double> probabilities);
  static SpeedDistribution uniform(double b);  // uniform on (0, b]
  static SpeedDistribution truncated_pareto(double alpha, double x_min, double x_max);
  static SpeedDistribution log_normal(double mu, double sigma);

  SpeedKind kind() const { return kind_; }

  // E[V^u] for u >= 0. Throws InfiniteMomentError if the moment overflows.
  double moment(double u) const;

  // Draw from nu itself.
  double sample(RngStream& rng) const;

  // Draw from the size-biased distribution of order i >= 0 (i = 0 is nu).
  double size_biased_sample(int order, RngStream& rng) const;

  // Parameter accessors (only valid for the matching kind).
  double point_value() const { return a_; }
  const std::vector<double>& values() const { return values_; }
  const std::vector<double>& probabilities() const { return probs_; }
  double upper_bound() const { return a_; }       // Uniform
  double pareto_alpha() const { return a_; }      // TruncatedPareto
  double pareto_x_min() const { return b_; }
  double pareto_x_max() const { return c_; }
  double log_normal_mu() const { return a_; }     // LogNormal
  double log_normal_sigma() const { return b_; }

  bool operator==(const SpeedDistribution&) const = default;

 private:
  SpeedDistribution() = default;

  SpeedKind kind_ = SpeedKind::PointMass;
  double a_ = 1.0, b_ = 0.0, c_ = 0.0;
  std::vector<double> values_;
  std::vector<double> probs_;
};

}  // namespace jmgrow
