#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "jmgrow/model.hpp"
#include "jmgrow/rng.hpp"

namespace jmgrow {

// The only points that can influence exposure inside the window by the
// horizon are those with dist(y, W) <= v * (a - t). Their total intensity
// mass decomposes over Steiner orders i = 0..d:
//   mass_i = s * omega_i * V_{d-i}(W) * nu_i * int_0^a (a-t)^i theta(dt),
// which is what makes exact (rejection-free in t and v) sampling possible.
struct RelevanceRegion {
  double total_mass = 0.0;
  std::vector<double> component_mass;  // by Steiner order i = 0..d
};

RelevanceRegion relevance_region(const ModelSpec& spec);

// Total intensity mass of the relevance region (Poisson mean of the seed count).
double region_mass(const ModelSpec& spec);

// One exact draw of the restricted birth-growth process.
struct Realization {
  ModelSpec spec;
  std::vector<Seed> seeds;
  std::uint64_t master_seed = 0;
  std::uint64_t substream_index = 0;
  double region_mass = 0.0;
};

Realization sample_realization(const ModelSpec& spec, RngStream& rng);

// Intensity mass of the influence set L_{x,t} of a point born at time t
// (location-independent): s * nu_d * Lambda(t).
double mass_of_influence_set(const ModelSpec& spec, double t);

// Test helper: number of sampled seeds whose grown ball covers x by time t,
// i.e. seeds (y, t_y, v_y) with t_y <= t and |x - y| <= v_y (t - t_y).
std::int64_t count_influencing(const Realization& realization,
                               std::span<const double> x, double t);

}  // namespace jmgrow
