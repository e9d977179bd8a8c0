#pragma once

#include <cstdint>
#include <vector>

#include "jmgrow/sampler.hpp"

namespace jmgrow {

enum class ExposureAlgorithm { Naive, Indexed, Both };

struct ExposureResult {
  // Exposure flag per seed, in the realization's seed order.
  std::vector<std::uint8_t> exposed;
  // Number of exposed seeds inside the window with birth time <= horizon.
  std::int64_t count = 0;
  ExposureAlgorithm algorithm = ExposureAlgorithm::Naive;
  double wall_seconds = 0.0;
};

// Does `earlier` shade `later`? True iff `earlier` strictly precedes `later`
// in birth order (ties broken by id) and its ball has reached `later`'s
// location by `later`'s birth time. Both exposure algorithms call exactly
// this predicate, so their outputs agree flag for flag.
bool shades(const Seed& earlier, const Seed& later);

// Quadratic reference algorithm: processes seeds in birth order, scanning all
// earlier seeds with early exit on the first shading witness.
ExposureResult exposed_naive(const Realization& realization);

// Grid-and-speed-bucket algorithm: seeds live in per-speed-octave uniform
// grids; a query scans only cells within each bucket's maximal reach.
ExposureResult exposed_indexed(const Realization& realization);

// Dispatch on `algorithm`; Both runs the two algorithms and cross-checks
// their flags, returning the indexed result.
ExposureResult exposed(const Realization& realization, ExposureAlgorithm algorithm);

// F = number of flagged-exposed seeds located in the window and born by the
// horizon. The flags vector must come from the same realization.
std::int64_t functional_F(const Realization& realization,
                          const std::vector<std::uint8_t>& exposed_flags);

}  // namespace jmgrow
