#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <vector>

#include "jmgrow/campaign.hpp"
#include "jmgrow/errors.hpp"
#include "jmgrow/rng.hpp"
#include "jmgrow/special_functions.hpp"
#include "support/oracles.hpp"

using namespace jmgrow;

TEST_CASE("standardize centers and scales") {
  const std::vector<std::int64_t> xs = {1, 2, 3, 4};
  const auto z = standardize(xs);
  REQUIRE(z.size() == 4);
  double sum = 0.0, ss = 0.0;
  for (const double v : z) sum += v;
  for (const double v : z) ss += v * v;
  CHECK(sum == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(ss / 3.0 == doctest::Approx(1.0).epsilon(1e-12));  // unbiased variance 1

  CHECK_THROWS_AS((void)standardize(std::vector<std::int64_t>{5}),
                  DegenerateSampleError);
  CHECK_THROWS_AS((void)standardize(std::vector<std::int64_t>{3, 3, 3}),
                  DegenerateSampleError);
}

TEST_CASE("kolmogorov distance reference values") {
  // Two points at -1 and 1: sup gap is Phi(1) - 1/2.
  const std::vector<double> pair = {-1.0, 1.0};
  CHECK(kolmogorov_to_gaussian(pair) ==
        doctest::Approx(0.34134474606854295).epsilon(1e-14));
  // Symmetric under reordering.
  const std::vector<double> swapped = {1.0, -1.0};
  CHECK(kolmogorov_to_gaussian(swapped) ==
        doctest::Approx(0.34134474606854295).epsilon(1e-14));
  // Single atom at 0: max(1 - 1/2, 1/2 - 0) = 1/2.
  CHECK(kolmogorov_to_gaussian(std::vector<double>{0.0}) ==
        doctest::Approx(0.5).epsilon(1e-14));
  CHECK_THROWS_AS((void)kolmogorov_to_gaussian(std::vector<double>{}),
                  DegenerateSampleError);

  // Draws that really are standard normal should land near zero.
  RngStream rng(314159, 0);
  std::vector<double> z(4000);
  for (auto& v : z) v = rng.normal();
  CHECK(kolmogorov_to_gaussian(z) < 0.03);
}

TEST_CASE("wasserstein distance reference values") {
  // A single atom at 0 against N(0,1): E|Z| = sqrt(2/pi).
  CHECK(wasserstein_to_gaussian(std::vector<double>{0.0}) ==
        doctest::Approx(0.79788456080286536).epsilon(1e-13));
  // Duplicated atoms change nothing.
  CHECK(wasserstein_to_gaussian(std::vector<double>{0.0, 0.0}) ==
        doctest::Approx(0.79788456080286536).epsilon(1e-13));
  // Four-point reference value: exact piecewise integral of |F_m - Phi| in
  // 40-digit arithmetic, split at the three crossings Phi^{-1}(k/4).
  const std::vector<double> xs = {-1.3, -0.2, 0.4, 2.2};
  CHECK(wasserstein_to_gaussian(xs) ==
        doctest::Approx(0.43150603488826265).epsilon(1e-12));

  // Independent route: Riemann sum of |F_m - Phi| on [-8, 8]; the missed
  // tails are below 1e-14.
  auto empirical = [&xs](double t) {
    double c = 0.0;
    for (const double x : xs) c += (x <= t) ? 1.0 : 0.0;
    return c / static_cast<double>(xs.size());
  };
  const double riemann = oracle::riemann_midpoint(
      [&](double t) { return std::abs(empirical(t) - normal_cdf(t)); }, -8.0, 8.0,
      400000);
  CHECK(wasserstein_to_gaussian(xs) == doctest::Approx(riemann).epsilon(1e-7));

  CHECK_THROWS_AS((void)wasserstein_to_gaussian(std::vector<double>{}),
                  DegenerateSampleError);
}

TEST_CASE("fit_rate recovers an exact power law") {
  const std::vector<double> scales = {1.0, 4.0, 16.0, 64.0};
  std::vector<double> dist(scales.size());
  for (std::size_t i = 0; i < scales.size(); ++i) {
    dist[i] = 3.0 * std::pow(scales[i], -0.5);
  }
  const auto fit = fit_rate(scales, dist);
  CHECK(fit.exponent == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(fit.intercept == doctest::Approx(std::log(3.0)).epsilon(1e-12));
  CHECK(fit.residual == doctest::Approx(0.0).epsilon(1e-10));

  CHECK_THROWS_AS((void)fit_rate(std::vector<double>{1, 2, 3}, std::vector<double>{1, 2, 3}),
                  DomainError);
  CHECK_THROWS_AS(
      (void)fit_rate(std::vector<double>{1, 2, 3, 4}, std::vector<double>{1, 2, 3}),
      DomainError);
  CHECK_THROWS_AS((void)fit_rate(std::vector<double>{1, 2, 3, 4},
                                 std::vector<double>{1, 2, 0, 3}),
                  DomainError);
  CHECK_THROWS_AS((void)fit_rate(std::vector<double>{2, 2, 2, 2},
                                 std::vector<double>{1, 2, 3, 4}),
                  DomainError);
}

TEST_CASE("campaign validation collects violations") {
  CampaignConfig config;
  config.replications = 50;
  config.threads = -1;
  config.mode = ScalingMode::Window;
  config.scales = {};
  auto errors = validation_errors(config);
  CHECK(errors.size() == 3);

  config.scales = {0.5, 2.0};
  errors = validation_errors(config);
  bool has_ge_one = false;
  for (const auto& e : errors) has_ge_one |= e.find(">= 1") != std::string::npos;
  CHECK(has_ge_one);

  config.scales = {1.0, 1.0};
  errors = validation_errors(config);
  bool has_increasing = false;
  for (const auto& e : errors) has_increasing |= e.find("increasing") != std::string::npos;
  CHECK(has_increasing);
}

TEST_CASE("campaigns are deterministic across thread counts") {
  CampaignConfig config;
  config.replications = 100;
  config.master_seed = 4242;
  config.threads = 1;
  const auto one = run_campaign(config);
  config.threads = 3;
  const auto three = run_campaign(config);
  REQUIRE(one.points.size() == 1);
  REQUIRE(three.points.size() == 1);
  CHECK(one.points[0].f_samples == three.points[0].f_samples);
  CHECK(one.points[0].sample_mean == three.points[0].sample_mean);
  CHECK(one.points[0].sample_variance == three.points[0].sample_variance);
}

TEST_CASE("reference campaign matches the analytic first two moments") {
  CampaignConfig config;
  config.replications = 200;
  config.master_seed = 20240915;
  config.threads = 2;
  config.algorithm = ExposureAlgorithm::Both;  // cross-checks every realization
  const auto result = run_campaign(config);
  REQUIRE(result.points.size() == 1);
  const auto& p = result.points[0];

  CHECK(p.analytic_mean == doctest::Approx(0.74682413281242703).epsilon(1e-10));
  CHECK(p.var_lower == doctest::Approx(0.39737886105683002).epsilon(1e-8));
  CHECK(p.var_upper == doctest::Approx(1.8273019944445048).epsilon(1e-8));
  CHECK_FALSE(p.var_lower_vacuous);
  CHECK_FALSE(p.degenerate);

  // Mean within 4 standard errors.
  const double se = std::sqrt(p.sample_variance / 200.0);
  CHECK(std::abs(p.sample_mean - p.analytic_mean) < 4.0 * se);

  // The 99% variance CI must meet the analytic bracket.
  const auto report = variance_bracket_check(result);
  REQUIRE(report.points.size() == 1);
  CHECK(report.all_compatible);
  CHECK(report.points[0].ci_low < report.points[0].ci_high);
  CHECK(report.points[0].ci_low <= report.points[0].upper);
  CHECK(report.points[0].ci_high >= report.points[0].lower);
  CHECK(report.points[0].scaling_ratio > 0.0);
  CHECK(report.points[0].low_count_caveat);  // m = 200 < 1000

  // Bootstrap SE of d_K is a small positive number.
  CHECK(p.d_kolmogorov_se > 0.0);
  CHECK(p.d_kolmogorov_se < 0.2);
  CHECK(p.d_kolmogorov > 0.0);
  CHECK(p.d_wasserstein > 0.0);
}

TEST_CASE("window-scaling campaign produces fits and per-point specs") {
  CampaignConfig config;
  config.replications = 100;
  config.mode = ScalingMode::Window;
  config.scales = {1.0, 2.0, 4.0, 9.0};
  config.master_seed = 777;
  config.threads = 2;
  const auto result = run_campaign(config);
  REQUIRE(result.points.size() == 4);
  for (std::size_t q = 0; q < 4; ++q) {
    CHECK(result.points[q].scale == config.scales[q]);
    CHECK(result.points[q].spec.window_scale == config.scales[q]);
    CHECK(result.points[q].spec.intensity_multiplier == 1.0);
    // E F grows linearly in the window volume.
    CHECK(result.points[q].analytic_mean ==
          doctest::Approx(config.scales[q] * 0.74682413281242703).epsilon(1e-9));
  }
  REQUIRE(result.kolmogorov_fit.has_value());
  REQUIRE(result.wasserstein_fit.has_value());
  CHECK(std::isfinite(result.kolmogorov_fit->exponent));
  CHECK(std::isfinite(result.wasserstein_fit->exponent));
  CHECK(result.kolmogorov_exponent_se >= 0.0);

  // Intensity mode touches the multiplier instead.
  config.mode = ScalingMode::Intensity;
  config.scales = {1.0, 3.0};
  const auto intensity = run_campaign(config);
  REQUIRE(intensity.points.size() == 2);
  CHECK(intensity.points[1].spec.intensity_multiplier == 3.0);
  CHECK(intensity.points[1].spec.window_scale == 1.0);
  CHECK_FALSE(intensity.kolmogorov_fit.has_value());  // fewer than 4 points
}

TEST_CASE("degenerate campaigns are reported, not crashed") {
  CampaignConfig config;
  config.replications = 100;
  config.spec.horizon = 1e-6;  // region mass ~ 2e-6: F = 0 in every replication
  config.master_seed = 1;
  const auto result = run_campaign(config);
  REQUIRE(result.points.size() == 1);
  const auto& p = result.points[0];
  CHECK(p.degenerate);
  CHECK(p.sample_mean == 0.0);
  CHECK(p.sample_variance == 0.0);
  CHECK(std::isnan(p.d_kolmogorov));
  CHECK(std::isnan(p.d_wasserstein));
  CHECK_FALSE(result.kolmogorov_fit.has_value());

  // The bracket check still runs; the analytic lower bound is positive, so a
  // zero-variance sample is incompatible.
  const auto report = variance_bracket_check(result);
  CHECK_FALSE(report.all_compatible);
  CHECK(report.points[0].low_count_caveat);

  CHECK_THROWS_AS((void)variance_bracket_check(CampaignResult{}),
                  DegenerateSampleError);
}
