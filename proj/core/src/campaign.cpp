#include "jmgrow/campaign.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <numeric>
#include <string>
#include <thread>

#include "jmgrow/analytic.hpp"
#include "jmgrow/errors.hpp"
#include "jmgrow/special_functions.hpp"

namespace jmgrow {

namespace {

constexpr int kBootstrapResamples = 200;
// Substream index layout: high 32 bits = scale point, bit 31 = bootstrap.
constexpr std::uint64_t kBootstrapTag = 0x80000000ULL;

std::uint64_t replication_stream(std::size_t point, int replication) {
  return (static_cast<std::uint64_t>(point) << 32) |
         static_cast<std::uint64_t>(replication);
}

std::uint64_t bootstrap_stream(std::size_t point, int resample) {
  return (static_cast<std::uint64_t>(point) << 32) | kBootstrapTag |
         static_cast<std::uint64_t>(resample);
}

ModelSpec spec_at_scale(const CampaignConfig& config, double scale) {
  ModelSpec spec = config.spec;
  switch (config.mode) {
    case ScalingMode::None:
      break;
    case ScalingMode::Window:
      spec.window_scale = scale;
      break;
    case ScalingMode::Intensity:
      spec.intensity_multiplier = scale;
      break;
  }
  return spec;
}

void validate_campaign(const CampaignConfig& config) {
  auto errors = validation_errors(config);
  if (!errors.empty()) throw ValidationError(std::move(errors));
}

void run_replications(const ModelSpec& spec, const CampaignConfig& config,
                      std::size_t point_index, std::vector<std::int64_t>& f_out) {
  const int m = config.replications;
  f_out.assign(static_cast<std::size_t>(m), 0);
  int n_threads = config.threads > 0
                      ? config.threads
                      : static_cast<int>(std::thread::hardware_concurrency());
  n_threads = std::clamp(n_threads, 1, m);

  std::atomic<int> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;

  auto worker = [&]() {
    for (;;) {
      const int r = next.fetch_add(1);
      if (r >= m) return;
      try {
        RngStream stream(config.master_seed, replication_stream(point_index, r));
        const Realization realization = sample_realization(spec, stream);
        const ExposureResult result = exposed(realization, config.algorithm);
        f_out[static_cast<std::size_t>(r)] = result.count;
      } catch (...) {
        std::scoped_lock lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };

  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(n_threads));
    for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (first_error) std::rethrow_exception(first_error);
}

struct SampleStats {
  double mean = 0.0;
  double variance = 0.0;
};

SampleStats sample_stats(std::span<const std::int64_t> xs) {
  const double m = static_cast<double>(xs.size());
  long double sum = 0.0L;
  for (const auto x : xs) sum += static_cast<long double>(x);
  const double mean = static_cast<double>(sum / m);
  long double ss = 0.0L;
  for (const auto x : xs) {
    const long double diff = static_cast<long double>(x) - mean;
    ss += diff * diff;
  }
  const double variance = xs.size() > 1 ? static_cast<double>(ss / (m - 1.0)) : 0.0;
  return {mean, variance};
}

// Bootstrap Kolmogorov distances, one per resample; NaN marks resamples whose
// variance collapsed to zero.
std::vector<double> bootstrap_kolmogorov(std::span<const std::int64_t> xs,
                                         std::uint64_t master, std::size_t point) {
  std::vector<double> out(kBootstrapResamples,
                          std::numeric_limits<double>::quiet_NaN());
  const std::size_t m = xs.size();
  std::vector<std::int64_t> resample(m);
  for (int b = 0; b < kBootstrapResamples; ++b) {
    RngStream stream(master, bootstrap_stream(point, b));
    for (std::size_t i = 0; i < m; ++i) resample[i] = xs[stream.index_below(m)];
    try {
      const auto z = standardize(resample);
      out[static_cast<std::size_t>(b)] = kolmogorov_to_gaussian(z);
    } catch (const DegenerateSampleError&) {
      // leave NaN
    }
  }
  return out;
}

double stddev_ignoring_nan(std::span<const double> xs) {
  double sum = 0.0;
  int n = 0;
  for (const double x : xs) {
    if (!std::isnan(x)) {
      sum += x;
      ++n;
    }
  }
  if (n < 2) return std::numeric_limits<double>::quiet_NaN();
  const double mean = sum / n;
  double ss = 0.0;
  for (const double x : xs) {
    if (!std::isnan(x)) ss += (x - mean) * (x - mean);
  }
  return std::sqrt(ss / (n - 1));
}

}  // namespace

std::vector<std::string> validation_errors(const CampaignConfig& config) {
  std::vector<std::string> errors = validation_errors(config.spec);
  if (config.replications < 100) {
    errors.push_back("campaign needs at least 100 replications");
  }
  if (config.threads < 0) {
    errors.push_back("thread count must be >= 0");
  }
  if (config.mode != ScalingMode::None) {
    if (config.scales.empty()) {
      errors.push_back("scaling campaign needs a nonempty scale ladder");
    }
    for (std::size_t i = 0; i < config.scales.size(); ++i) {
      if (!(config.scales[i] >= 1.0) || !std::isfinite(config.scales[i])) {
        errors.push_back("scales must be finite and >= 1");
        break;
      }
    }
    for (std::size_t i = 1; i < config.scales.size(); ++i) {
      if (!(config.scales[i] > config.scales[i - 1])) {
        errors.push_back("scales must be strictly increasing");
        break;
      }
    }
  }
  return errors;
}

std::vector<double> standardize(std::span<const std::int64_t> samples) {
  if (samples.size() < 2) {
    throw DegenerateSampleError("standardize: need at least 2 samples");
  }
  const auto stats = sample_stats(samples);
  if (!(stats.variance > 0.0)) {
    throw DegenerateSampleError("standardize: sample variance is zero");
  }
  const double sd = std::sqrt(stats.variance);
  std::vector<double> z(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    z[i] = (static_cast<double>(samples[i]) - stats.mean) / sd;
  }
  return z;
}

double kolmogorov_to_gaussian(std::span<const double> standardized) {
  if (standardized.empty()) {
    throw DegenerateSampleError("kolmogorov_to_gaussian: empty sample");
  }
  std::vector<double> xs(standardized.begin(), standardized.end());
  std::sort(xs.begin(), xs.end());
  const double m = static_cast<double>(xs.size());
  double dist = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double phi = normal_cdf(xs[i]);
    const double hi = (static_cast<double>(i) + 1.0) / m - phi;
    const double lo = phi - static_cast<double>(i) / m;
    dist = std::max({dist, hi, lo});
  }
  return dist;
}

namespace {

// Antiderivative of Phi: int_{-inf}^{t} Phi = t Phi(t) + phi(t).
double phi_antiderivative(double t) { return t * normal_cdf(t) + normal_pdf(t); }

// int_a^b |c - Phi(t)| dt with 0 <= c <= 1, exact up to normal_cdf itself.
double wasserstein_segment(double a, double b, double c) {
  if (!(b > a)) return 0.0;
  const double fa = normal_cdf(a);
  const double fb = normal_cdf(b);
  const double area = phi_antiderivative(b) - phi_antiderivative(a);
  if (c <= fa) return area - c * (b - a);
  if (c >= fb) return c * (b - a) - area;
  const double cross = std::clamp(normal_quantile(c), a, b);
  const double left = c * (cross - a) - (phi_antiderivative(cross) - phi_antiderivative(a));
  const double right = (phi_antiderivative(b) - phi_antiderivative(cross)) - c * (b - cross);
  return left + right;
}

}  // namespace

double wasserstein_to_gaussian(std::span<const double> standardized) {
  if (standardized.empty()) {
    throw DegenerateSampleError("wasserstein_to_gaussian: empty sample");
  }
  std::vector<double> xs(standardized.begin(), standardized.end());
  std::sort(xs.begin(), xs.end());
  const double m = static_cast<double>(xs.size());
  // Tails are exact: int_{-inf}^{x} Phi = A(x), int_x^{inf} (1 - Phi) = A(x) - x.
  double total = phi_antiderivative(xs.front());
  total += phi_antiderivative(xs.back()) - xs.back();
  for (std::size_t i = 1; i < xs.size(); ++i) {
    total += wasserstein_segment(xs[i - 1], xs[i], static_cast<double>(i) / m);
  }
  return total;
}

RateFit fit_rate(std::span<const double> scales, std::span<const double> distances) {
  if (scales.size() != distances.size()) {
    throw DomainError("fit_rate: size mismatch");
  }
  if (scales.size() < 4) {
    throw DomainError("fit_rate: need at least 4 scale points");
  }
  const std::size_t n = scales.size();
  std::vector<double> xs(n), ys(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(scales[i] > 0.0) || !(distances[i] > 0.0)) {
      throw DomainError("fit_rate: scales and distances must be > 0");
    }
    xs[i] = std::log(scales[i]);
    ys[i] = std::log(distances[i]);
  }
  const double x_mean = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(n);
  const double y_mean = std::accumulate(ys.begin(), ys.end(), 0.0) / static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (xs[i] - x_mean) * (xs[i] - x_mean);
    sxy += (xs[i] - x_mean) * (ys[i] - y_mean);
  }
  if (!(sxx > 0.0)) throw DomainError("fit_rate: scales must not be all equal");
  RateFit fit;
  fit.exponent = sxy / sxx;
  fit.intercept = y_mean - fit.exponent * x_mean;
  double ss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = ys[i] - (fit.intercept + fit.exponent * xs[i]);
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / static_cast<double>(n));
  return fit;
}

CampaignResult run_campaign(const CampaignConfig& config) {
  validate_campaign(config);
  std::vector<double> scales =
      config.mode == ScalingMode::None ? std::vector<double>{1.0} : config.scales;
  for (const double scale : scales) {
    validate(spec_at_scale(config, scale));
  }

  CampaignResult result;
  result.points.resize(scales.size());
  std::vector<std::vector<double>> boot_dk(scales.size());

  for (std::size_t q = 0; q < scales.size(); ++q) {
    ScalePointResult& point = result.points[q];
    point.scale = scales[q];
    point.spec = spec_at_scale(config, scales[q]);

    run_replications(point.spec, config, q, point.f_samples);

    const auto stats = sample_stats(point.f_samples);
    point.sample_mean = stats.mean;
    point.sample_variance = stats.variance;
    point.degenerate = !(stats.variance > 0.0);

    if (point.degenerate) {
      point.d_kolmogorov = std::numeric_limits<double>::quiet_NaN();
      point.d_wasserstein = std::numeric_limits<double>::quiet_NaN();
      point.d_kolmogorov_se = std::numeric_limits<double>::quiet_NaN();
      boot_dk[q].assign(kBootstrapResamples, std::numeric_limits<double>::quiet_NaN());
    } else {
      const auto z = standardize(point.f_samples);
      point.d_kolmogorov = kolmogorov_to_gaussian(z);
      point.d_wasserstein = wasserstein_to_gaussian(z);
      boot_dk[q] = bootstrap_kolmogorov(point.f_samples, config.master_seed, q);
      point.d_kolmogorov_se = stddev_ignoring_nan(boot_dk[q]);
    }

    point.analytic_mean = mean_F(point.spec);
    const VarianceBound lower = var_lower_bound(point.spec);
    point.var_lower = lower.value;
    point.var_lower_vacuous = lower.vacuous;
    point.var_upper = var_upper_bound(point.spec);
  }

  // Log-log decay fits need a ladder of at least 4 usable points.
  const bool fittable =
      scales.size() >= 4 &&
      std::all_of(result.points.begin(), result.points.end(), [](const auto& p) {
        return !p.degenerate && p.d_kolmogorov > 0.0 && p.d_wasserstein > 0.0;
      });
  if (fittable) {
    std::vector<double> dk(scales.size()), dw(scales.size());
    for (std::size_t q = 0; q < scales.size(); ++q) {
      dk[q] = result.points[q].d_kolmogorov;
      dw[q] = result.points[q].d_wasserstein;
    }
    result.kolmogorov_fit = fit_rate(scales, dk);
    result.wasserstein_fit = fit_rate(scales, dw);

    // Exponent spread over bootstrap resamples of every scale point.
    std::vector<double> exponents;
    exponents.reserve(kBootstrapResamples);
    std::vector<double> db(scales.size());
    for (int b = 0; b < kBootstrapResamples; ++b) {
      bool ok = true;
      for (std::size_t q = 0; q < scales.size(); ++q) {
        db[q] = boot_dk[q][static_cast<std::size_t>(b)];
        if (std::isnan(db[q]) || !(db[q] > 0.0)) {
          ok = false;
          break;
        }
      }
      if (ok) exponents.push_back(fit_rate(scales, db).exponent);
    }
    result.kolmogorov_exponent_se = stddev_ignoring_nan(exponents);
  }

  return result;
}

BracketReport variance_bracket_check(const CampaignResult& result) {
  if (result.points.empty()) {
    throw DegenerateSampleError("variance_bracket_check: campaign has no scale points");
  }
  BracketReport report;
  report.all_compatible = true;
  for (const auto& point : result.points) {
    if (point.f_samples.size() < 2) {
      throw DegenerateSampleError("variance_bracket_check: scale point has < 2 samples");
    }
    BracketPoint bp;
    bp.scale = point.scale;
    bp.sample_variance = point.sample_variance;
    const double dof = static_cast<double>(point.f_samples.size()) - 1.0;
    if (point.sample_variance > 0.0) {
      bp.ci_low = dof * point.sample_variance / chi_square_quantile(0.995, dof);
      bp.ci_high = dof * point.sample_variance / chi_square_quantile(0.005, dof);
    }
    bp.lower = point.var_lower;
    bp.lower_vacuous = point.var_lower_vacuous;
    bp.upper = point.var_upper;
    const double lower_effective = bp.lower_vacuous ? 0.0 : bp.lower;
    bp.compatible = bp.ci_low <= bp.upper && bp.ci_high >= lower_effective;

    const ModelSpec& spec = point.spec;
    const double nu_d = spec.speed.moment(static_cast<double>(spec.dimension));
    const double scale_denominator =
        spec.effective_window().volume() *
        l_a_tau(spec.horizon, spec.time_intensity.tau(), spec.dimension, nu_d);
    bp.scaling_ratio = point.sample_variance / scale_denominator;
    bp.low_count_caveat = point.f_samples.size() < 1000 || point.sample_mean < 5.0;

    report.all_compatible = report.all_compatible && bp.compatible;
    report.points.push_back(bp);
  }
  return report;
}

}  // namespace jmgrow
