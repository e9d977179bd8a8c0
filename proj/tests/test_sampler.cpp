#include <doctest.h>

#include <cmath>
#include <vector>

#include "jmgrow/errors.hpp"
#include "jmgrow/rng.hpp"
#include "jmgrow/sampler.hpp"

using namespace jmgrow;

namespace {

ModelSpec reference_spec_d1() { return ModelSpec{}; }

ModelSpec discrete_spec_d1() {
  ModelSpec spec;
  spec.speed = SpeedDistribution::finite_discrete({1.0, 3.0}, {0.5, 0.5});
  return spec;
}

ModelSpec wide_spec_d1(SpeedDistribution speed) {
  ModelSpec spec;
  spec.window = WindowGeometry::box({8.0});
  spec.speed = std::move(speed);
  return spec;
}

}  // namespace

TEST_CASE("relevance region mass has the hand-computed closed form") {
  // d=1, W=[0,1], a=1, Lebesgue, point speed 1:
  //   mass_0 = V_1 = 1, mass_1 = omega_1 V_0 nu_1 a^2 B(2,1) = 2 * 1/2 = 1.
  const auto region_d1 = relevance_region(reference_spec_d1());
  REQUIRE(region_d1.component_mass.size() == 2);
  CHECK(region_d1.component_mass[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(region_d1.component_mass[1] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(region_d1.total_mass == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(region_mass(reference_spec_d1()) == doctest::Approx(2.0).epsilon(1e-14));

  // d=1, speeds {1,3} equally likely: mass_1 = 2 * nu_1 * 1/2 = 2.
  CHECK(region_mass(discrete_spec_d1()) == doctest::Approx(3.0).epsilon(1e-14));

  // d=2, unit square, point speed c: 1 + 2c + pi c^2 / 3.
  ModelSpec d2;
  d2.dimension = 2;
  d2.window = WindowGeometry::box({1.0, 1.0});
  d2.speed = SpeedDistribution::point_mass(0.7);
  const double c = 0.7;
  CHECK(region_mass(d2) ==
        doctest::Approx(1.0 + 2.0 * c + M_PI * c * c / 3.0).epsilon(1e-14));

  // The intensity multiplier scales every component linearly.
  ModelSpec scaled = reference_spec_d1();
  scaled.intensity_multiplier = 5.0;
  CHECK(region_mass(scaled) == doctest::Approx(10.0).epsilon(1e-14));

  CHECK_THROWS_AS((void)region_mass([] {
                    ModelSpec bad;
                    bad.dimension = 0;
                    return bad;
                  }()),
                  ValidationError);
}

TEST_CASE("seed count is Poisson with the region mass as mean") {
  const auto spec = reference_spec_d1();
  const int reps = 3000;
  long double sum = 0.0L, sum_sq = 0.0L;
  for (int r = 0; r < reps; ++r) {
    RngStream rng(20240901, static_cast<std::uint64_t>(r));
    const auto real = sample_realization(spec, rng);
    const double n = static_cast<double>(real.seeds.size());
    sum += n;
    sum_sq += n * n;
  }
  const double mean = static_cast<double>(sum / reps);
  const double var = static_cast<double>(sum_sq / reps) - mean * mean;
  // Poisson(2): sd of the sample mean is sqrt(2/reps).
  CHECK(std::abs(mean - 2.0) < 4.0 * std::sqrt(2.0 / reps));
  // Poisson dispersion: variance equals the mean.
  CHECK(var == doctest::Approx(2.0).epsilon(0.15));
}

TEST_CASE("seed marginals match the mixture they were derived from") {
  const auto spec = discrete_spec_d1();
  const int reps = 4000;
  long long total_seeds = 0, in_window = 0, speed_three = 0;
  long double birth_sum = 0.0L;
  for (int r = 0; r < reps; ++r) {
    RngStream rng(777001, static_cast<std::uint64_t>(r));
    const auto real = sample_realization(spec, rng);
    for (const Seed& s : real.seeds) {
      ++total_seeds;
      birth_sum += s.birth_time;
      if (spec.window.contains(s.location)) ++in_window;
      if (s.speed == 3.0) ++speed_three;
    }
  }
  REQUIRE(total_seeds > 8000);
  const double n = static_cast<double>(total_seeds);

  // P(location in W) = s lam(W) theta([0,a]) / total_mass = 1/3 here.
  const double frac_in = static_cast<double>(in_window) / n;
  CHECK(std::abs(frac_in - 1.0 / 3.0) < 4.0 * std::sqrt((1.0 / 3.0) * (2.0 / 3.0) / n));

  // P(v = 3): component 0 draws nu itself, component 1 the size-biased law:
  //   (1/3) * 1/2 + (2/3) * (1/2 * 3 / 2) = 2/3.
  const double frac_three = static_cast<double>(speed_three) / n;
  CHECK(std::abs(frac_three - 2.0 / 3.0) < 4.0 * std::sqrt((2.0 / 9.0) / n));
}

TEST_CASE("birth time mean matches the component mixture") {
  // d=1 reference model: components have equal mass; Beta(1,1) and Beta(1,2)
  // birth laws give E t = 1/2 * 1/2 + 1/2 * 1/3 = 5/12.
  const auto spec = reference_spec_d1();
  long long total_seeds = 0;
  long double birth_sum = 0.0L;
  for (int r = 0; r < 4000; ++r) {
    RngStream rng(31415, static_cast<std::uint64_t>(r));
    const auto real = sample_realization(spec, rng);
    for (const Seed& s : real.seeds) {
      ++total_seeds;
      birth_sum += s.birth_time;
      CHECK(s.birth_time >= 0.0);
      CHECK(s.birth_time <= spec.horizon);
      CHECK(s.speed == 1.0);
    }
  }
  const double mean = static_cast<double>(birth_sum / total_seeds);
  CHECK(std::abs(mean - 5.0 / 12.0) <
        4.0 * 0.3 / std::sqrt(static_cast<double>(total_seeds)));
}

TEST_CASE("every sampled seed lies in its own relevance shell") {
  ModelSpec spec;
  spec.dimension = 2;
  spec.window = WindowGeometry::ball(2, 1.2);
  spec.speed = SpeedDistribution::truncated_pareto(1.5, 0.2, 5.0);
  spec.time_intensity = TimeIntensity::power_law(-0.5);
  spec.horizon = 0.8;
  RngStream rng(5150, 3);
  int seen = 0;
  for (int r = 0; r < 200; ++r) {
    const auto real = sample_realization(spec, rng);
    for (const Seed& s : real.seeds) {
      ++seen;
      const double reach = s.speed * (spec.horizon - s.birth_time);
      CHECK(spec.window.distance_to(s.location) <= reach + 1e-12);
    }
  }
  CHECK(seen > 100);
}

TEST_CASE("influence-set mass identity holds empirically") {
  // For x deep inside a wide window every influencing point is inside the
  // relevance region, so the count is Poisson(s nu_d Lambda(t)).
  const auto spec = wide_spec_d1(SpeedDistribution::finite_discrete({1.0, 3.0},
                                                                    {0.5, 0.5}));
  const std::vector<double> x = {4.0};
  for (const double t : {0.5, 1.0}) {
    const double mass = mass_of_influence_set(spec, t);
    CHECK(mass == doctest::Approx(2.0 * t * t).epsilon(1e-13));
    const int reps = 3000;
    long double sum = 0.0L;
    for (int r = 0; r < reps; ++r) {
      RngStream rng(424242 + static_cast<std::uint64_t>(1000.0 * t),
                    static_cast<std::uint64_t>(r));
      sum += static_cast<double>(count_influencing(sample_realization(spec, rng), x, t));
    }
    const double mean = static_cast<double>(sum / reps);
    CHECK(std::abs(mean - mass) < 4.0 * std::sqrt(mass / reps));
  }
  CHECK_THROWS_AS((void)mass_of_influence_set(spec, -0.5), DomainError);
}

TEST_CASE("sampling is deterministic per substream") {
  const auto spec = discrete_spec_d1();
  RngStream a(99, 7), b(99, 7), c(99, 8);
  const auto ra = sample_realization(spec, a);
  const auto rb = sample_realization(spec, b);
  const auto rc = sample_realization(spec, c);
  REQUIRE(ra.seeds.size() == rb.seeds.size());
  for (std::size_t i = 0; i < ra.seeds.size(); ++i) {
    CHECK(ra.seeds[i].location == rb.seeds[i].location);
    CHECK(ra.seeds[i].birth_time == rb.seeds[i].birth_time);
    CHECK(ra.seeds[i].speed == rb.seeds[i].speed);
    CHECK(ra.seeds[i].id == rb.seeds[i].id);
  }
  CHECK(ra.master_seed == 99);
  CHECK(ra.substream_index == 7);
  // A different substream index must give a different draw.
  bool differs = ra.seeds.size() != rc.seeds.size();
  for (std::size_t i = 0; !differs && i < ra.seeds.size(); ++i) {
    differs = ra.seeds[i].location != rc.seeds[i].location ||
              ra.seeds[i].birth_time != rc.seeds[i].birth_time;
  }
  CHECK(differs);
}

TEST_CASE("count_influencing on an empty realization is zero") {
  ModelSpec spec;
  spec.horizon = 1e-9;  // region mass ~ 2e-9: virtually always empty
  RngStream rng(1, 0);
  const auto real = sample_realization(spec, rng);
  const std::vector<double> x = {0.5};
  CHECK(count_influencing(real, x, 1.0) == 0);
}
