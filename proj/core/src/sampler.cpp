#include "jmgrow/sampler.hpp"

#include <cmath>
#include <string>

#include "jmgrow/analytic.hpp"
#include "jmgrow/errors.hpp"
#include "jmgrow/special_functions.hpp"

namespace jmgrow {

namespace {

constexpr int kRejectionCap = 10000;

}  // namespace

RelevanceRegion relevance_region(const ModelSpec& spec) {
  validate(spec);
  const int d = spec.dimension;
  const double a = spec.horizon;
  const double tau = spec.time_intensity.tau();
  const WindowGeometry w = spec.effective_window();
  RelevanceRegion region;
  region.component_mass.resize(static_cast<std::size_t>(d) + 1);
  for (int i = 0; i <= d; ++i) {
    // int_0^a (a-t)^i t^tau dt = a^{i+tau+1} B(i+1, tau+1).
    const double time_part =
        std::pow(a, i + tau + 1.0) * beta_function(i + 1.0, tau + 1.0);
    const double mass = spec.intensity_multiplier * unit_ball_volume(i) *
                        w.intrinsic_volume(d - i) *
                        spec.speed.moment(static_cast<double>(i)) * time_part;
    region.component_mass[static_cast<std::size_t>(i)] = mass;
    region.total_mass += mass;
  }
  return region;
}

double region_mass(const ModelSpec& spec) { return relevance_region(spec).total_mass; }

Realization sample_realization(const ModelSpec& spec, RngStream& rng) {
  const RelevanceRegion region = relevance_region(spec);
  const int d = spec.dimension;
  const double a = spec.horizon;
  const double tau = spec.time_intensity.tau();
  const WindowGeometry w = spec.effective_window();

  Realization out;
  out.spec = spec;
  out.master_seed = rng.master();
  out.substream_index = rng.index();
  out.region_mass = region.total_mass;

  const long long n = rng.poisson(region.total_mass);
  out.seeds.reserve(static_cast<std::size_t>(n));

  std::vector<double> lo, hi, point(static_cast<std::size_t>(d));
  for (long long k = 0; k < n; ++k) {
    // Steiner order of this point's parallel-body shell.
    double u = rng.uniform() * region.total_mass;
    int comp = d;
    for (int i = 0; i < d; ++i) {
      if (u < region.component_mass[static_cast<std::size_t>(i)]) {
        comp = i;
        break;
      }
      u -= region.component_mass[static_cast<std::size_t>(i)];
    }

    // Birth time: density on [0, a] proportional to (a-t)^comp t^tau,
    // i.e. t = a * X with X ~ Beta(tau+1, comp+1).
    const double t = a * rng.beta(tau + 1.0, comp + 1.0);

    // Speed from the size-biased law of order comp.
    const double v = spec.speed.size_biased_sample(comp, rng);

    // Location: uniform on the parallel body W + B_r(0), r = v (a - t),
    // by rejection from its bounding box. Conditionally on (t, v) the
    // location of a relevant point is exactly uniform on that body.
    const double r = v * (a - t);
    w.dilated_bounds(r, lo, hi);
    bool placed = false;
    for (int iter = 0; iter < kRejectionCap; ++iter) {
      for (int j = 0; j < d; ++j) {
        point[static_cast<std::size_t>(j)] =
            rng.uniform(lo[static_cast<std::size_t>(j)], hi[static_cast<std::size_t>(j)]);
      }
      if (w.distance_to(point) <= r) {
        placed = true;
        break;
      }
    }
    if (!placed) {
      throw SamplerError("sample_realization: rejection cap hit while placing a point");
    }

    Seed seed;
    seed.location = point;
    seed.birth_time = t;
    seed.speed = v;
    seed.id = static_cast<std::int64_t>(k);
    out.seeds.push_back(std::move(seed));
  }
  return out;
}

double mass_of_influence_set(const ModelSpec& spec, double t) {
  validate(spec);
  if (!(t >= 0.0)) throw DomainError("mass_of_influence_set: t must be >= 0");
  const double nu_d = spec.speed.moment(static_cast<double>(spec.dimension));
  return spec.intensity_multiplier * nu_d *
         big_lambda(spec.time_intensity, spec.dimension, t);
}

std::int64_t count_influencing(const Realization& realization,
                               std::span<const double> x, double t) {
  std::int64_t count = 0;
  for (const Seed& seed : realization.seeds) {
    const double dt = t - seed.birth_time;
    if (dt < 0.0) continue;
    double d2 = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) {
      const double diff = x[j] - seed.location[j];
      d2 += diff * diff;
    }
    const double reach = seed.speed * dt;
    if (d2 <= reach * reach) ++count;
  }
  return count;
}

}  // namespace jmgrow
