#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "jmgrow/exposure.hpp"
#include "jmgrow/model.hpp"

namespace jmgrow {

enum class ScalingMode { None, Window, Intensity };

// A replicated Monte Carlo experiment over a ladder of scales. Replication r
// of scale point q draws from a dedicated RNG substream, so results are
// byte-identical no matter how many threads run the campaign.
struct CampaignConfig {
  ModelSpec spec;
  int replications = 200;
  ScalingMode mode = ScalingMode::None;
  std::vector<double> scales;  // ignored for None; must be >= 1, increasing
  std::uint64_t master_seed = 1;
  ExposureAlgorithm algorithm = ExposureAlgorithm::Indexed;
  int threads = 0;  // 0 = hardware concurrency

  bool operator==(const CampaignConfig&) const = default;
};

struct ScalePointResult {
  double scale = 1.0;
  ModelSpec spec;  // spec with the scale applied
  std::vector<std::int64_t> f_samples;

  double sample_mean = 0.0;
  double sample_variance = 0.0;  // unbiased
  bool degenerate = false;       // zero sample variance

  // Gaussian-distance diagnostics of the standardized samples.
  double d_kolmogorov = 0.0;
  double d_wasserstein = 0.0;
  double d_kolmogorov_se = 0.0;  // bootstrap

  // Analytic counterparts.
  double analytic_mean = 0.0;
  double var_lower = 0.0;
  bool var_lower_vacuous = false;
  double var_upper = 0.0;
};

struct RateFit {
  double exponent = 0.0;
  double intercept = 0.0;
  double residual = 0.0;  // RMS residual in log-log space
};

struct CampaignResult {
  std::vector<ScalePointResult> points;
  std::optional<RateFit> kolmogorov_fit;
  std::optional<RateFit> wasserstein_fit;
  double kolmogorov_exponent_se = 0.0;  // bootstrap
};

// Every invariant violation in the campaign (including its model spec).
std::vector<std::string> validation_errors(const CampaignConfig& config);

CampaignResult run_campaign(const CampaignConfig& config);

// Standardize integer samples to zero mean, unit sample variance.
// Throws DegenerateSampleError for fewer than 2 samples or zero variance.
std::vector<double> standardize(std::span<const std::int64_t> samples);

// Kolmogorov distance between the empirical law of `standardized` and N(0,1).
double kolmogorov_to_gaussian(std::span<const double> standardized);

// 1-Wasserstein distance to N(0,1), evaluated as the exact piecewise integral
// of |F_m - Phi| between consecutive order statistics.
double wasserstein_to_gaussian(std::span<const double> standardized);

// Least-squares fit of log(distance) against log(scale). Requires >= 4 points
// and strictly positive distances.
RateFit fit_rate(std::span<const double> scales, std::span<const double> distances);

// Per-scale-point confront of the sample variance with the analytic bracket.
struct BracketPoint {
  double scale = 1.0;
  double sample_variance = 0.0;
  double ci_low = 0.0;   // 99% chi-square interval for the true variance
  double ci_high = 0.0;
  double lower = 0.0;
  bool lower_vacuous = false;
  double upper = 0.0;
  bool compatible = false;  // CI intersects [lower, upper]
  double scaling_ratio = 0.0;  // Var(F) / (lambda(W) l_{a,tau}(nu_d))
  bool low_count_caveat = false;
};

struct BracketReport {
  std::vector<BracketPoint> points;
  bool all_compatible = false;
};

BracketReport variance_bracket_check(const CampaignResult& result);

}  // namespace jmgrow
