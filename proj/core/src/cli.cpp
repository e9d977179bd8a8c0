#include "jmgrow/cli.hpp"

#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "jmgrow/analytic.hpp"
#include "jmgrow/errors.hpp"
#include "jmgrow/exposure.hpp"
#include "jmgrow/sampler.hpp"
#include "jmgrow/special_functions.hpp"
#include "jmgrow/version.hpp"

namespace jmgrow {

namespace {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

const char* scaling_mode_name(ScalingMode mode) {
  switch (mode) {
    case ScalingMode::None:
      return "none";
    case ScalingMode::Window:
      return "window";
    case ScalingMode::Intensity:
      return "intensity";
  }
  return "none";
}

void write_file(const std::filesystem::path& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << bytes;
  if (!out) throw Error("write failed for '" + path.string() + "'");
}

}  // namespace

std::uint64_t fnv1a_hash(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const char c : text) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ULL;
  }
  return h;
}

std::string flat_table_csv(const CampaignResult& result) {
  std::ostringstream out;
  out << "scale,replication,F\n";
  for (const auto& point : result.points) {
    for (std::size_t r = 0; r < point.f_samples.size(); ++r) {
      out << format_double(point.scale) << "," << r << "," << point.f_samples[r]
          << "\n";
    }
  }
  return out.str();
}

std::string summary_json(const ExperimentFile& experiment, const CampaignResult& result,
                         const BracketReport& brackets, std::string_view timestamp) {
  using json = nlohmann::ordered_json;
  const std::string config_text = serialize_config(experiment);

  json doc;
  doc["tool"] = "jmgrow";
  doc["version"] = std::string(kVersion);
  doc["timestamp"] = std::string(timestamp);
  doc["master_seed"] = experiment.campaign.master_seed;
  char hash_buf[32];
  std::snprintf(hash_buf, sizeof(hash_buf), "%016llx",
                static_cast<unsigned long long>(fnv1a_hash(config_text)));
  doc["config_hash"] = hash_buf;
  doc["scaling_mode"] = scaling_mode_name(experiment.campaign.mode);
  doc["config_text"] = config_text;

  doc["points"] = json::array();
  for (std::size_t q = 0; q < result.points.size(); ++q) {
    const auto& p = result.points[q];
    const auto& b = brackets.points[q];
    json jp;
    jp["scale"] = p.scale;
    jp["replications"] = p.f_samples.size();
    jp["sample_mean"] = p.sample_mean;
    jp["sample_variance"] = p.sample_variance;
    jp["degenerate"] = p.degenerate;
    jp["analytic_mean"] = p.analytic_mean;
    jp["var_lower"] = p.var_lower;
    jp["var_lower_vacuous"] = p.var_lower_vacuous;
    jp["var_upper"] = p.var_upper;
    jp["variance_ci99"] = json::array({b.ci_low, b.ci_high});
    jp["bracket_compatible"] = b.compatible;
    jp["scaling_ratio"] = b.scaling_ratio;
    jp["low_count_caveat"] = b.low_count_caveat;
    jp["d_kolmogorov"] = p.d_kolmogorov;
    jp["d_wasserstein"] = p.d_wasserstein;
    jp["d_kolmogorov_se"] = p.d_kolmogorov_se;
    doc["points"].push_back(std::move(jp));
  }

  auto fit_json = [](const std::optional<RateFit>& fit) -> json {
    if (!fit) return nullptr;
    json jf;
    jf["exponent"] = fit->exponent;
    jf["intercept"] = fit->intercept;
    jf["residual"] = fit->residual;
    return jf;
  };
  doc["kolmogorov_fit"] = fit_json(result.kolmogorov_fit);
  if (result.kolmogorov_fit) {
    doc["kolmogorov_fit"]["exponent_se"] = result.kolmogorov_exponent_se;
  }
  doc["wasserstein_fit"] = fit_json(result.wasserstein_fit);
  doc["all_brackets_compatible"] = brackets.all_compatible;

  return doc.dump(2) + "\n";
}

int cmd_run(const RunOptions& options, std::ostream& out, std::ostream& err) {
  ExperimentFile experiment;
  try {
    experiment = parse_config(options.config_path);
  } catch (const ConfigError& e) {
    err << e.what() << "\n";
    return 2;
  }
  if (options.seed) experiment.campaign.master_seed = *options.seed;
  if (options.threads) experiment.campaign.threads = *options.threads;
  if (options.out_dir) experiment.out_dir = *options.out_dir;

  try {
    const CampaignConfig& campaign = experiment.campaign;
    if (options.dry_run) {
      std::vector<double> scales = campaign.mode == ScalingMode::None
                                       ? std::vector<double>{1.0}
                                       : campaign.scales;
      out << "dry run: " << scales.size() << " scale point(s), "
          << campaign.replications << " replications each\n";
      for (const double scale : scales) {
        ModelSpec spec = campaign.spec;
        if (campaign.mode == ScalingMode::Window) spec.window_scale = scale;
        if (campaign.mode == ScalingMode::Intensity) spec.intensity_multiplier = scale;
        validate(spec);
        const VarianceBound lower = var_lower_bound(spec);
        out << "scale " << format_double(scale)
            << ": mean_F = " << format_double(mean_F(spec))
            << ", var in [" << format_double(lower.vacuous ? 0.0 : lower.value) << ", "
            << format_double(var_upper_bound(spec)) << "]"
            << ", expected seeds = " << format_double(region_mass(spec)) << "\n";
      }
      return 0;
    }

    const CampaignResult result = run_campaign(campaign);
    const BracketReport brackets = variance_bracket_check(result);

    std::filesystem::create_directories(experiment.out_dir);
    write_file(experiment.out_dir / "table.csv", flat_table_csv(result));
    write_file(experiment.out_dir / "summary.json",
               summary_json(experiment, result, brackets, utc_timestamp()));

    for (const auto& point : result.points) {
      out << "scale " << format_double(point.scale) << ": mean "
          << format_double(point.sample_mean) << " (analytic "
          << format_double(point.analytic_mean) << "), variance "
          << format_double(point.sample_variance) << ", d_K "
          << format_double(point.d_kolmogorov) << "\n";
    }
    if (result.kolmogorov_fit) {
      out << "kolmogorov rate: exponent "
          << format_double(result.kolmogorov_fit->exponent) << " (se "
          << format_double(result.kolmogorov_exponent_se) << ")\n";
    }
    out << "brackets " << (brackets.all_compatible ? "compatible" : "INCOMPATIBLE")
        << "; wrote " << (experiment.out_dir / "summary.json").string() << "\n";
    return 0;
  } catch (const std::exception& e) {
    // Covers library errors and filesystem failures (unwritable out dir, ...).
    err << e.what() << "\n";
    return 1;
  }
}

namespace {

struct CheckReporter {
  std::ostream& out;
  bool all_passed = true;

  void report(const std::string& name, bool passed, const std::string& detail) {
    out << (passed ? "PASS" : "FAIL") << " - " << name;
    if (!detail.empty()) out << " (" << detail << ")";
    out << "\n";
    all_passed = all_passed && passed;
  }
};

// Closed forms against direct quadrature of their defining integrals.
bool check_closed_forms(FaultInjection fault, std::string& detail) {
  const double fault_factor = fault == FaultInjection::MeanFormula ? 1.0 + 1e-6 : 1.0;
  double worst = 0.0;
  const QuadratureSpec quad{1e-13, 1e-11, 48};

  const std::vector<TimeIntensity> intensities = {
      TimeIntensity::lebesgue(), TimeIntensity::power_law(-0.5),
      TimeIntensity::power_law(1.0)};
  for (const auto& theta : intensities) {
    for (int d = 1; d <= 3; ++d) {
      for (const double t : {0.5, 1.0, 2.0}) {
        const double closed = big_lambda(theta, d, t) * fault_factor;
        const double direct =
            unit_ball_volume(d) *
            integrate_theta(
                theta, [&](double s) { return std::pow(t - s, d); }, 0.0, t, quad);
        worst = std::max(worst, std::abs(closed - direct) / direct);
      }
      // Q(x, y): truncate the defining integral where the exponential factor
      // hits e^-60.
      for (const double x : {0.0, 1.0, 2.5}) {
        for (const double y : {0.5, 1.0, 3.0}) {
          const double tau = theta.tau();
          const double coeff =
              y * unit_ball_volume(d) * beta_function(d + 1.0, tau + 1.0);
          const double t_cut = std::pow(60.0 / coeff, 1.0 / (d + tau + 1.0));
          const double direct = integrate_theta(
              theta,
              [&](double t) {
                return std::pow(t, x) * std::exp(-y * big_lambda(theta, d, t));
              },
              0.0, t_cut, quad);
          const double closed = q_integral(x, y, theta, d);
          worst = std::max(worst, std::abs(closed - direct) / direct);
        }
      }
    }
  }

  // l_{a,tau} against the substituted incomplete-gamma integral
  // gamma(p, z) = (1/p) int_0^{z^p} exp(-w^{1/p}) dw.
  for (const double tau : {0.0, -0.5, 1.0}) {
    for (int d = 1; d <= 2; ++d) {
      for (const double x : {0.25, 1.0, 4.0}) {
        const double a = 1.3;
        const double p = (tau + 1.0) / (d + tau + 1.0);
        const double z = std::pow(a, d + tau + 1.0) * x;
        const double direct =
            (1.0 / p) *
            integrate([&](double w) { return std::exp(-std::pow(w, 1.0 / p)); }, 0.0,
                      std::pow(z, p), quad) *
            std::pow(x, -p);
        const double closed = l_a_tau(a, tau, d, x);
        worst = std::max(worst, std::abs(closed - direct) / direct);
      }
    }
  }

  // ell kernel: diagonal closed form against its defining integral.
  for (const double tau : {0.0, 0.5}) {
    const auto theta =
        tau == 0.0 ? TimeIntensity::lebesgue() : TimeIntensity::power_law(tau);
    for (int d = 1; d <= 2; ++d) {
      const double t = 0.8;
      const double kappa = unit_ball_volume(d);
      const double direct =
          kappa * kappa * 1.7 *
          integrate_theta(
              theta, [&](double s) { return std::pow(t - s, 2.0 * d); }, 0.0, t, quad);
      const double closed = ell_kernel(t, t, theta, d, 1.7);
      worst = std::max(worst, std::abs(closed - direct) / direct);
    }
  }

  detail = "worst relative gap " + format_double(worst);
  return worst <= 1e-8;
}

bool check_algorithm_agreement(std::string& detail) {
  const std::vector<SpeedDistribution> speeds = {
      SpeedDistribution::point_mass(1.0),
      SpeedDistribution::finite_discrete({0.5, 2.0}, {0.7, 0.3}),
      SpeedDistribution::uniform(2.0),
      SpeedDistribution::truncated_pareto(1.5, 0.2, 5.0),
      SpeedDistribution::log_normal(-0.3, 0.8),
  };
  int checked = 0;
  for (int d = 1; d <= 3; ++d) {
    for (std::size_t si = 0; si < speeds.size(); ++si) {
      for (int rep = 0; rep < 4; ++rep) {
        ModelSpec spec;
        spec.dimension = d;
        spec.window = WindowGeometry::box(
            std::vector<double>(static_cast<std::size_t>(d), d == 1 ? 8.0 : 2.0));
        spec.horizon = 1.0;
        spec.speed = speeds[si];
        spec.time_intensity =
            rep % 2 == 0 ? TimeIntensity::lebesgue() : TimeIntensity::power_law(0.5);
        RngStream stream(424242, static_cast<std::uint64_t>(d * 1000 + si * 10 + rep));
        const Realization realization = sample_realization(spec, stream);
        const ExposureResult naive = exposed_naive(realization);
        const ExposureResult indexed = exposed_indexed(realization);
        if (naive.exposed != indexed.exposed || naive.count != indexed.count) {
          detail = "disagreement at d=" + std::to_string(d) +
                   ", speed family " + std::to_string(si) + ", rep " + std::to_string(rep);
          return false;
        }
        ++checked;
      }
    }
  }
  detail = std::to_string(checked) + " realizations, flags identical";
  return true;
}

bool check_mean_consistency(int threads, std::string& detail) {
  CampaignConfig config;
  config.spec.dimension = 1;
  config.spec.window = WindowGeometry::box({1.0});
  config.spec.horizon = 1.0;
  config.replications = 400;
  config.master_seed = 20260815;
  config.threads = threads;
  const CampaignResult result = run_campaign(config);
  const auto& point = result.points.front();
  const double se = std::sqrt(point.sample_variance / 400.0);
  const double gap = std::abs(point.sample_mean - point.analytic_mean);
  detail = "sample mean " + format_double(point.sample_mean) + ", analytic " +
           format_double(point.analytic_mean) + ", gap " + format_double(gap) + " vs 4*se " +
           format_double(4.0 * se);
  return gap <= 4.0 * se;
}

}  // namespace

int cmd_verify(int threads, FaultInjection fault, std::ostream& out) {
  CheckReporter reporter{out};
  std::string detail;

  bool ok = false;
  try {
    ok = check_closed_forms(fault, detail);
  } catch (const Error& e) {
    ok = false;
    detail = e.what();
  }
  reporter.report("closed forms match direct quadrature", ok, detail);

  try {
    ok = check_algorithm_agreement(detail);
  } catch (const Error& e) {
    ok = false;
    detail = e.what();
  }
  reporter.report("exposure algorithms agree", ok, detail);

  try {
    ok = check_mean_consistency(threads, detail);
  } catch (const Error& e) {
    ok = false;
    detail = e.what();
  }
  reporter.report("empirical mean matches analytic mean", ok, detail);

  out << (reporter.all_passed ? "verify: all checks passed"
                              : "verify: at least one check FAILED")
      << "\n";
  return reporter.all_passed ? 0 : 1;
}

}  // namespace jmgrow
