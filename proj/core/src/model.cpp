#include "jmgrow/model.hpp"

#include <cmath>

#include "jmgrow/errors.hpp"

namespace jmgrow {

WindowGeometry ModelSpec::effective_window() const {
  if (window_scale == 1.0) return window;
  return window.scaled(std::pow(window_scale, 1.0 / static_cast<double>(dimension)));
}

std::vector<std::string> validation_errors(const ModelSpec& spec) {
  std::vector<std::string> errors;
  if (spec.dimension < 1) {
    errors.push_back("dimension must be >= 1");
  }
  if (!(spec.horizon > 0.0) || !std::isfinite(spec.horizon)) {
    errors.push_back("horizon must be finite and > 0");
  }
  if (spec.window.dimension() != spec.dimension) {
    errors.push_back("window dimension does not match model dimension");
  }
  if (!(spec.intensity_multiplier >= 1.0) || !std::isfinite(spec.intensity_multiplier)) {
    errors.push_back("intensity multiplier must be finite and >= 1");
  }
  if (!(spec.window_scale >= 1.0) || !std::isfinite(spec.window_scale)) {
    errors.push_back("window scale must be finite and >= 1");
  }
  if (!(spec.quadrature.abs_tol > 0.0) || !(spec.quadrature.rel_tol > 0.0)) {
    errors.push_back("quadrature tolerances must be > 0");
  }
  if (spec.quadrature.max_depth < 10) {
    errors.push_back("quadrature max depth must be >= 10");
  }
  if (spec.dimension >= 1) {
    // The moment bound that the variance machinery leans on: E[V^u] must be
    // finite up to u = 7d.
    try {
      (void)spec.speed.moment(7.0 * static_cast<double>(spec.dimension));
    } catch (const InfiniteMomentError&) {
      errors.push_back("speed distribution must have finite moments up to order 7*dimension");
    }
  }
  return errors;
}

void validate(const ModelSpec& spec) {
  auto errors = validation_errors(spec);
  if (!errors.empty()) throw ValidationError(std::move(errors));
}

}  // namespace jmgrow
