#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "jmgrow/geometry.hpp"
#include "jmgrow/quadrature.hpp"
#include "jmgrow/speed.hpp"
#include "jmgrow/time_intensity.hpp"

namespace jmgrow {

// One point of the birth-growth process: a location, a birth time, and a
// growth speed. `id` breaks ties between simultaneous births.
struct Seed {
  std::vector<double> location;
  double birth_time = 0.0;
  double speed = 0.0;
  std::int64_t id = 0;
};

// Full description of one birth-growth experiment. The driving process has
// intensity s * (lambda (x) theta (x) nu); `window_scale` dilates the
// observation window to n times its reference volume.
struct ModelSpec {
  int dimension = 1;
  TimeIntensity time_intensity = TimeIntensity::lebesgue();
  double horizon = 1.0;
  WindowGeometry window = WindowGeometry::box({1.0});
  SpeedDistribution speed = SpeedDistribution::point_mass(1.0);
  double intensity_multiplier = 1.0;  // s >= 1
  double window_scale = 1.0;          // n >= 1, volume scale factor
  QuadratureSpec quadrature{};

  // Window actually observed: the reference window dilated by n^{1/d}.
  WindowGeometry effective_window() const;

  bool operator==(const ModelSpec&) const = default;
};

// All invariant violations in `spec`, empty when valid.
std::vector<std::string> validation_errors(const ModelSpec& spec);

// Throws ValidationError listing every violation.
void validate(const ModelSpec& spec);

}  // namespace jmgrow
