#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "jmgrow/analytic.hpp"
#include "jmgrow/errors.hpp"
#include "jmgrow/special_functions.hpp"
#include "support/oracles.hpp"

using namespace jmgrow;

namespace {

ModelSpec reference_spec_d1() {
  ModelSpec spec;  // defaults: d=1, Lebesgue, a=1, W=[0,1], point speed 1
  return spec;
}

ModelSpec reference_spec_d1_discrete() {
  ModelSpec spec;
  spec.speed = SpeedDistribution::finite_discrete({1.0, 3.0}, {0.5, 0.5});
  return spec;
}

ModelSpec reference_spec_d2() {
  ModelSpec spec;
  spec.dimension = 2;
  spec.window = WindowGeometry::box({1.0, 1.0});
  return spec;
}

ModelSpec spec_d2_power_law() {
  ModelSpec spec;
  spec.dimension = 2;
  spec.window = WindowGeometry::box({1.0, 2.0});
  spec.time_intensity = TimeIntensity::power_law(1.0);
  spec.horizon = 1.3;
  spec.speed = SpeedDistribution::point_mass(0.7);
  return spec;
}

}  // namespace

TEST_CASE("big_lambda closed form") {
  // d=1, Lebesgue: Lambda(t) = kappa_1 B(2,1) t^2 = t^2.
  CHECK(big_lambda(TimeIntensity::lebesgue(), 1, 0.7) ==
        doctest::Approx(0.49).epsilon(1e-14));
  // d=2, tau=1: Lambda(t) = pi B(3,2) t^4 = pi t^4 / 12; at t=2 that is 4 pi / 3.
  CHECK(big_lambda(TimeIntensity::power_law(1.0), 2, 2.0) ==
        doctest::Approx(4.1887902047863910).epsilon(1e-14));
  CHECK(big_lambda(TimeIntensity::lebesgue(), 3, 0.0) == 0.0);
  // Direct quadrature oracle on a generic case (d=2, tau=-0.5, t=1.7).
  const double want = oracle::tanh_sinh(
      [](double s) { return M_PI * (1.7 - s) * (1.7 - s) * std::pow(s, -0.5); }, 0.0,
      1.7);
  CHECK(big_lambda(TimeIntensity::power_law(-0.5), 2, 1.7) ==
        doctest::Approx(want).epsilon(1e-12));
  CHECK_THROWS_AS((void)big_lambda(TimeIntensity::lebesgue(), 0, 1.0), DomainError);
  CHECK_THROWS_AS((void)big_lambda(TimeIntensity::lebesgue(), 1, -1.0), DomainError);
}

TEST_CASE("w_of_t decays from one") {
  const auto theta = TimeIntensity::lebesgue();
  CHECK(w_of_t(theta, 1, 1.0, 0.0) == 1.0);
  double prev = 1.0;
  for (double t = 0.1; t <= 2.0; t += 0.1) {
    const double w = w_of_t(theta, 2, 1.5, t);
    CHECK(w < prev);
    CHECK(w > 0.0);
    prev = w;
  }
  CHECK(w_of_t(theta, 1, 2.0, 1.0) == doctest::Approx(std::exp(-2.0)).epsilon(1e-14));
  CHECK_THROWS_AS((void)w_of_t(theta, 1, 0.0, 1.0), DomainError);
}

TEST_CASE("mean_F matches reference values and independent quadrature") {
  // d=1 reference model: E F = int_0^1 exp(-t^2) dt.
  const double mean_d1 = mean_F(reference_spec_d1());
  CHECK(mean_d1 == doctest::Approx(0.74682413281242703).epsilon(1e-10));
  // Two independent routes to the same integral.
  CHECK(mean_d1 == doctest::Approx(oracle::riemann_midpoint(
                       [](double t) { return std::exp(-t * t); }, 0.0, 1.0, 2000000))
                       .epsilon(1e-10));
  CHECK(mean_d1 ==
        doctest::Approx(oracle::tanh_sinh([](double t) { return std::exp(-t * t); },
                                          0.0, 1.0))
            .epsilon(1e-12));

  CHECK(mean_F(reference_spec_d1_discrete()) ==
        doctest::Approx(0.59814400666130410).epsilon(1e-10));
  CHECK(mean_F(reference_spec_d2()) ==
        doctest::Approx(0.80067489542399705).epsilon(1e-10));

  // d=2 power-law case, checked against a from-scratch oracle integral:
  // E F = lam(W) int_0^a exp(-nu_2 pi t^4 / 12) t dt with nu_2 = 0.49.
  const double mean_d2p = mean_F(spec_d2_power_law());
  CHECK(mean_d2p == doctest::Approx(1.5044431003001404).epsilon(1e-10));
  const double oracle_d2p =
      2.0 * oracle::tanh_sinh(
                [](double t) { return std::exp(-0.49 * M_PI * std::pow(t, 4.0) / 12.0) * t; },
                0.0, 1.3);
  CHECK(mean_d2p == doctest::Approx(oracle_d2p).epsilon(1e-11));

  CHECK_THROWS_AS((void)mean_F([] {
                    ModelSpec bad;
                    bad.horizon = 0.0;
                    return bad;
                  }()),
                  ValidationError);
}

TEST_CASE("mean_F scales exactly with window volume and intensity") {
  auto spec = reference_spec_d1();
  const double base = mean_F(spec);
  spec.window_scale = 9.0;
  CHECK(mean_F(spec) == doctest::Approx(9.0 * base).epsilon(1e-12));

  // Intensity multiplier enters both the prefactor and the exponent.
  auto fast = reference_spec_d1();
  fast.intensity_multiplier = 2.0;
  const double want = 2.0 * oracle::tanh_sinh(
                                [](double t) { return std::exp(-2.0 * t * t); }, 0.0, 1.0);
  CHECK(mean_F(fast) == doctest::Approx(want).epsilon(1e-11));
}

TEST_CASE("variance bounds match reference values") {
  const auto low_d1 = var_lower_bound(reference_spec_d1());
  CHECK_FALSE(low_d1.vacuous);
  CHECK(low_d1.value == doctest::Approx(0.39737886105683002).epsilon(1e-9));
  CHECK(var_upper_bound(reference_spec_d1()) ==
        doctest::Approx(1.8273019944445048).epsilon(1e-9));

  const auto low_disc = var_lower_bound(reference_spec_d1_discrete());
  CHECK_FALSE(low_disc.vacuous);
  CHECK(low_disc.value == doctest::Approx(0.19216921557464882).epsilon(1e-9));
  CHECK(var_upper_bound(reference_spec_d1_discrete()) ==
        doctest::Approx(1.8437137828912324).epsilon(1e-9));

  const auto low_d2 = var_lower_bound(reference_spec_d2());
  CHECK_FALSE(low_d2.vacuous);
  CHECK(low_d2.value == doctest::Approx(0.50801024380788702).epsilon(1e-9));
  CHECK(var_upper_bound(reference_spec_d2()) ==
        doctest::Approx(1.8637724147462711).epsilon(1e-9));

  const auto low_d2p = var_lower_bound(spec_d2_power_law());
  CHECK_FALSE(low_d2p.vacuous);
  CHECK(low_d2p.value == doctest::Approx(1.1764160090286515).epsilon(1e-9));
  CHECK(var_upper_bound(spec_d2_power_law()) ==
        doctest::Approx(3.2532785775070127).epsilon(1e-9));

  // Upper bound must dominate the lower bound whenever the latter is usable.
  CHECK(var_upper_bound(reference_spec_d1()) > low_d1.value);
}

TEST_CASE("variance bounds agree with independent nested quadrature") {
  // d=1 reference model, everything written out by hand:
  //   lower = term1 - 4 * term2,  w(t) = exp(-t^2)
  //   term1 = int_0^1 w,  term2 = int_0^1 w(t) int_0^t (t-u) w(u) du dt
  auto w = [](double t) { return std::exp(-t * t); };
  const double term1 = oracle::tanh_sinh(w, 0.0, 1.0);
  const double term2 = oracle::tanh_sinh(
      [&](double t) {
        return w(t) *
               oracle::tanh_sinh([&](double u) { return (t - u) * w(u); }, 0.0, t);
      },
      0.0, 1.0);
  CHECK(var_lower_bound(reference_spec_d1()).value ==
        doctest::Approx(term1 - 4.0 * term2).epsilon(1e-9));

  //   upper = 2 * int_0^1 sqrt(w) + 4 * int_0^1 g(u)^2 du,
  //   g(u) = int_u^1 (t-u) sqrt(w(t)) dt
  auto w_half = [](double t) { return std::exp(-0.5 * t * t); };
  const double up1 = 2.0 * oracle::tanh_sinh(w_half, 0.0, 1.0);
  const double up2 = 4.0 * oracle::tanh_sinh(
                               [&](double u) {
                                 const double g = oracle::tanh_sinh(
                                     [&](double t) { return (t - u) * w_half(t); }, u, 1.0);
                                 return g * g;
                               },
                               0.0, 1.0);
  CHECK(var_upper_bound(reference_spec_d1()) ==
        doctest::Approx(up1 + up2).epsilon(1e-9));
}

TEST_CASE("variance lower bound can be vacuous") {
  ModelSpec spec;
  spec.time_intensity = TimeIntensity::power_law(2.0);
  spec.speed = SpeedDistribution::point_mass(20.0);
  const auto low = var_lower_bound(spec);
  CHECK(low.vacuous);
  CHECK(low.value == doctest::Approx(-0.0078583037185661037).epsilon(1e-6));
  // The upper bound still exists and is positive.
  CHECK(var_upper_bound(spec) > 0.0);
}

TEST_CASE("l_a_tau closed form, monotonicity, and small-x limit") {
  // Frozen reference value (30-digit arithmetic).
  CHECK(l_a_tau(1.3, -0.5, 2, 2.0) == doctest::Approx(3.9912194146171702).epsilon(1e-12));

  // Independent route: l_{a,tau}(x) = (d+tau+1) int_0^a exp(-x u^{d+tau+1}) u^tau du.
  for (const double x : {0.05, 0.7, 2.0, 13.0}) {
    const double direct =
        2.5 * oracle::tanh_sinh(
                  [x](double u) { return std::exp(-x * std::pow(u, 2.5)) * std::pow(u, -0.5); },
                  0.0, 1.3);
    CHECK(l_a_tau(1.3, -0.5, 2, x) == doctest::Approx(direct).epsilon(1e-9));
  }

  // Strictly decreasing on a geometric grid.
  double prev = std::numeric_limits<double>::infinity();
  for (double x = 1e-6; x < 1e4; x *= 3.0) {
    const double v = l_a_tau(1.3, -0.5, 2, x);
    CHECK(v < prev);
    CHECK(v > 0.0);
    prev = v;
  }

  // x -> 0+ limit is a^{tau+1} (d+tau+1) / (tau+1).
  CHECK(l_a_tau(1.3, -0.5, 2, 1e-12) ==
        doctest::Approx(5.7008771254956899).epsilon(1e-5));

  CHECK_THROWS_AS((void)l_a_tau(0.0, 0.0, 1, 1.0), DomainError);
  CHECK_THROWS_AS((void)l_a_tau(1.0, -1.0, 1, 1.0), DomainError);
  CHECK_THROWS_AS((void)l_a_tau(1.0, 0.0, 1, 0.0), DomainError);
}

TEST_CASE("incomplete gamma scaling sandwich") {
  // min{1, b^x} gamma(x, y) <= gamma(x, b y) <= max{1, b^x} gamma(x, y).
  for (const double x : {0.3, 1.0, 2.7}) {
    for (const double y : {0.1, 1.0, 4.0}) {
      for (const double b : {0.2, 0.9, 1.0, 1.7, 6.0}) {
        const double base = lower_incomplete_gamma(x, y);
        const double scaled = lower_incomplete_gamma(x, b * y);
        const double bx = std::pow(b, x);
        CHECK(scaled >= std::min(1.0, bx) * base * (1.0 - 1e-12));
        CHECK(scaled <= std::max(1.0, bx) * base * (1.0 + 1e-12));
      }
    }
  }
}

TEST_CASE("q_integral closed form and scaling law") {
  const auto leb = TimeIntensity::lebesgue();
  // d=1, Lebesgue: Q(0,1) = int_0^inf exp(-t^2) dt = sqrt(pi)/2,
  // Q(2,1) = int_0^inf t^2 exp(-t^2) dt = sqrt(pi)/4.
  CHECK(q_integral(0.0, 1.0, leb, 1) ==
        doctest::Approx(std::sqrt(M_PI) / 2.0).epsilon(1e-13));
  CHECK(q_integral(2.0, 1.0, leb, 1) ==
        doctest::Approx(std::sqrt(M_PI) / 4.0).epsilon(1e-13));

  const auto theta = TimeIntensity::power_law(0.5);
  CHECK(q_integral(1.5, 2.0, theta, 2) ==
        doctest::Approx(0.32793408914015366).epsilon(1e-12));

  // Direct quadrature oracle: integrand decays like exp(-y Lambda(t)), so a
  // horizon with y Lambda(T) = 60 truncates below double precision.
  const double c = 2.0 * unit_ball_volume(2) * beta_function(3.0, 1.5);
  const double trunc = std::pow(60.0 / c, 1.0 / 3.5);
  const double direct = oracle::tanh_sinh(
      [c](double t) { return std::pow(t, 2.0) * std::exp(-c * std::pow(t, 3.5)); }, 0.0,
      trunc);
  CHECK(q_integral(1.5, 2.0, theta, 2) == doctest::Approx(direct).epsilon(1e-10));

  // Scaling law Q(x, b y) = b^{-(x+tau+1)/(d+tau+1)} Q(x, y).
  for (const double b : {0.3, 2.0, 11.0}) {
    const double e = (1.5 + 0.5 + 1.0) / (2.0 + 0.5 + 1.0);
    CHECK(q_integral(1.5, b * 2.0, theta, 2) ==
          doctest::Approx(std::pow(b, -e) * q_integral(1.5, 2.0, theta, 2))
              .epsilon(1e-12));
  }

  CHECK_THROWS_AS((void)q_integral(-0.5, 1.0, leb, 1), DomainError);
  CHECK_THROWS_AS((void)q_integral(1.0, 0.0, leb, 1), DomainError);
}

TEST_CASE("v_nu expands over intrinsic volumes") {
  // Unit square, point speed c: V_2 = 1, V_1 = 2, V_0 = 1, so
  // v_nu = c^2 + 2 c^3 + c^4.
  const auto square = WindowGeometry::box({1.0, 1.0});
  for (const double c : {0.5, 1.0, 1.7}) {
    const double want = c * c + 2.0 * c * c * c + c * c * c * c;
    CHECK(v_nu(square, SpeedDistribution::point_mass(c)) ==
          doctest::Approx(want).epsilon(1e-13));
  }
  // Random speed: plain sum of moments against the discrete closed form.
  const auto disc = SpeedDistribution::finite_discrete({1.0, 2.0}, {0.25, 0.75});
  double want = 0.0;
  for (int i = 0; i <= 2; ++i) {
    want += square.intrinsic_volume(2 - i) * disc.moment(2.0 + i);
  }
  CHECK(v_nu(square, disc) == doctest::Approx(want).epsilon(1e-13));
}

TEST_CASE("ell_kernel diagonal closed form and quadrature agree") {
  const auto leb = TimeIntensity::lebesgue();
  CHECK(ell_kernel(1.0, 1.0, leb, 1, 1.0) == doctest::Approx(4.0 / 3.0).epsilon(1e-13));
  CHECK(ell_kernel(0.7, 1.1, leb, 1, 1.0) ==
        doctest::Approx(0.84933333333333333).epsilon(1e-12));
  CHECK(ell_kernel(1.1, 0.7, leb, 1, 1.0) ==
        doctest::Approx(ell_kernel(0.7, 1.1, leb, 1, 1.0)).epsilon(1e-13));
  CHECK(ell_kernel(0.0, 1.0, leb, 1, 1.0) == 0.0);
  CHECK(ell_kernel(1.0, 0.0, leb, 1, 1.0) == 0.0);

  // Off-diagonal power-law case vs oracle.
  const auto theta = TimeIntensity::power_law(-0.5);
  const double got = ell_kernel(0.8, 1.4, theta, 2, 2.5);
  const double kappa2 = unit_ball_volume(2);
  const double want =
      kappa2 * kappa2 * 2.5 *
      oracle::tanh_sinh(
          [](double u) {
            return std::pow(0.8 - u, 2.0) * std::pow(1.4 - u, 2.0) * std::pow(u, -0.5);
          },
          0.0, 0.8);
  CHECK(got == doctest::Approx(want).epsilon(1e-10));

  // Diagonal and near-diagonal must be continuous with each other.
  CHECK(ell_kernel(1.0, 1.0 + 1e-9, leb, 1, 1.0) ==
        doctest::Approx(4.0 / 3.0).epsilon(1e-7));

  CHECK_THROWS_AS((void)ell_kernel(-1.0, 1.0, leb, 1, 1.0), DomainError);
  CHECK_THROWS_AS((void)ell_kernel(1.0, 1.0, leb, 1, 0.0), DomainError);
}

TEST_CASE("quadrature failure surfaces as QuadratureError") {
  ModelSpec spec = reference_spec_d1();
  // Steep enough that the panel estimates never collapse to exactly zero (a
  // gentle Gaussian resolves to the last bit and satisfies even these
  // tolerances legitimately).
  spec.intensity_multiplier = 50.0;
  spec.quadrature.abs_tol = 1e-300;
  spec.quadrature.rel_tol = 1e-300;
  spec.quadrature.max_depth = 10;
  CHECK_THROWS_AS((void)mean_F(spec), QuadratureError);
  try {
    (void)mean_F(spec);
  } catch (const QuadratureError& e) {
    CHECK(e.achieved_abs() > 0.0);
    CHECK(e.achieved_rel() > 0.0);
  }
}
