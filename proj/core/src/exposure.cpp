#include "jmgrow/exposure.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstring>
#include <limits>
#include <map>
#include <numeric>
#include <unordered_map>

#include "jmgrow/errors.hpp"

namespace jmgrow {

bool shades(const Seed& earlier, const Seed& later) {
  if (earlier.birth_time > later.birth_time) return false;
  if (earlier.birth_time == later.birth_time && earlier.id >= later.id) return false;
  const double dt = later.birth_time - earlier.birth_time;
  const double reach = earlier.speed * dt;
  double d2 = 0.0;
  for (std::size_t k = 0; k < earlier.location.size(); ++k) {
    const double diff = later.location[k] - earlier.location[k];
    d2 += diff * diff;
  }
  return d2 <= reach * reach;
}

namespace {

// Processing order: birth time, ties broken by id. Both algorithms rely on
// all potential shaders of a seed preceding it in this order.
std::vector<std::size_t> birth_order(const std::vector<Seed>& seeds) {
  std::vector<std::size_t> order(seeds.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (seeds[a].birth_time != seeds[b].birth_time) {
      return seeds[a].birth_time < seeds[b].birth_time;
    }
    return seeds[a].id < seeds[b].id;
  });
  return order;
}

std::uint64_t cell_key(const std::int64_t* cell, int d) {
  // FNV-1a over the raw cell coordinates. Hash collisions merge cells, which
  // only adds candidates to scan; the exact predicate keeps the result right.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (int k = 0; k < d; ++k) {
    std::uint64_t word;
    std::memcpy(&word, &cell[k], sizeof(word));
    for (int byte = 0; byte < 8; ++byte) {
      h ^= (word >> (8 * byte)) & 0xffULL;
      h *= 1099511628211ULL;
    }
  }
  return h;
}

struct SpeedBucket {
  std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> cells;
  double earliest_birth = 0.0;
  std::vector<std::int64_t> cell_lo, cell_hi;  // occupied-cell bounds per axis
  std::size_t seed_count = 0;
  bool empty = true;
};

ExposureResult finish(const Realization& realization, std::vector<std::uint8_t> flags,
                      ExposureAlgorithm algorithm,
                      std::chrono::steady_clock::time_point start) {
  ExposureResult result;
  result.exposed = std::move(flags);
  result.count = functional_F(realization, result.exposed);
  result.algorithm = algorithm;
  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace

ExposureResult exposed_naive(const Realization& realization) {
  const auto start = std::chrono::steady_clock::now();
  const auto& seeds = realization.seeds;
  const auto order = birth_order(seeds);
  std::vector<std::uint8_t> flags(seeds.size(), 1);
  for (std::size_t jp = 0; jp < order.size(); ++jp) {
    const Seed& later = seeds[order[jp]];
    for (std::size_t ip = 0; ip < jp; ++ip) {
      if (shades(seeds[order[ip]], later)) {
        flags[order[jp]] = 0;
        break;
      }
    }
  }
  return finish(realization, std::move(flags), ExposureAlgorithm::Naive, start);
}

ExposureResult exposed_indexed(const Realization& realization) {
  const auto start = std::chrono::steady_clock::now();
  const auto& seeds = realization.seeds;
  const std::size_t n = seeds.size();
  const int d = realization.spec.dimension;
  std::vector<std::uint8_t> flags(n, 1);
  if (n == 0) {
    return finish(realization, std::move(flags), ExposureAlgorithm::Indexed, start);
  }

  const auto order = birth_order(seeds);

  // Cell size: the smaller of the median full-horizon reach (right scale for
  // sparse, slow-growth scenes) and twice the mean inter-seed spacing (right
  // scale for crowded windows, where shading is decided among near
  // neighbors), kept within sane bounds of the scene. Too-large cells
  // degenerate the index into the naive scan.
  const auto window = realization.spec.effective_window();
  const double diam = window.diameter();
  std::vector<double> reaches(n);
  for (std::size_t i = 0; i < n; ++i) {
    reaches[i] = seeds[i].speed * realization.spec.horizon;
  }
  std::nth_element(reaches.begin(), reaches.begin() + static_cast<std::ptrdiff_t>(n / 2),
                   reaches.end());
  const double spacing =
      2.0 * std::pow(window.volume() / static_cast<double>(n), 1.0 / d);
  const double h =
      std::clamp(std::min(reaches[n / 2], spacing), diam / 4096.0, diam);

  // Buckets by speed octave: bucket k holds speeds in [2^k, 2^{k+1}), so by
  // time t every member's reach is below 2^{k+1} (t - earliest insertion).
  // Zero-speed seeds get a dedicated bucket that is never queried: with zero
  // reach they shade only exactly coincident points, a null event.
  std::map<int, SpeedBucket> buckets;
  constexpr int kZeroSpeedBucket = std::numeric_limits<int>::min();

  std::vector<std::int64_t> cell(static_cast<std::size_t>(d));
  std::vector<std::int64_t> scan_lo(static_cast<std::size_t>(d)),
      scan_hi(static_cast<std::size_t>(d));
  std::vector<std::int64_t> near_lo(static_cast<std::size_t>(d)),
      near_hi(static_cast<std::size_t>(d));

  for (std::size_t jp = 0; jp < order.size(); ++jp) {
    const std::size_t j = order[jp];
    const Seed& later = seeds[j];

    bool is_shaded = false;
    // Fast buckets first: they shade the farthest per unit of elapsed time,
    // so their near-cell pass settles most queries before slower buckets.
    for (auto bit = buckets.rbegin(); bit != buckets.rend() && !is_shaded; ++bit) {
      const int octave = bit->first;
      SpeedBucket& bucket = bit->second;
      if (octave == kZeroSpeedBucket || bucket.empty) continue;
      const double reach_cap =
          std::exp2(octave + 1) * (later.birth_time - bucket.earliest_birth);
      // Scan box: cells overlapping the reach-cap ball, clipped to occupied cells.
      bool box_empty = false;
      for (int k = 0; k < d; ++k) {
        const std::size_t ks = static_cast<std::size_t>(k);
        const double lo_f = std::floor((later.location[ks] - reach_cap) / h);
        const double hi_f = std::floor((later.location[ks] + reach_cap) / h);
        scan_lo[ks] = lo_f < static_cast<double>(bucket.cell_lo[ks])
                          ? bucket.cell_lo[ks]
                          : static_cast<std::int64_t>(lo_f);
        scan_hi[ks] = hi_f > static_cast<double>(bucket.cell_hi[ks])
                          ? bucket.cell_hi[ks]
                          : static_cast<std::int64_t>(hi_f);
        if (scan_lo[ks] > scan_hi[ks]) {
          box_empty = true;
          break;
        }
      }
      if (box_empty) continue;

      // Walk an integer box of cells; true once a shader is found.
      auto walk = [&](const std::vector<std::int64_t>& lo,
                      const std::vector<std::int64_t>& hi) {
        cell = lo;
        for (;;) {
          const auto it = bucket.cells.find(cell_key(cell.data(), d));
          if (it != bucket.cells.end()) {
            for (const std::uint32_t i : it->second) {
              if (shades(seeds[i], later)) return true;
            }
          }
          int k = 0;
          while (k < d) {
            const std::size_t ks = static_cast<std::size_t>(k);
            if (++cell[ks] <= hi[ks]) break;
            cell[ks] = lo[ks];
            ++k;
          }
          if (k == d) return false;
        }
      };

      // First pass: the cells right around the query point, where a shader is
      // most likely; spares the full box walk for the common shaded case.
      bool near_covers_box = true;
      bool near_empty = false;
      for (int k = 0; k < d; ++k) {
        const std::size_t ks = static_cast<std::size_t>(k);
        const std::int64_t center = static_cast<std::int64_t>(
            std::floor(later.location[ks] / h));
        near_lo[ks] = std::max(scan_lo[ks], center - 2);
        near_hi[ks] = std::min(scan_hi[ks], center + 2);
        near_covers_box =
            near_covers_box && near_lo[ks] == scan_lo[ks] && near_hi[ks] == scan_hi[ks];
        if (near_lo[ks] > near_hi[ks]) near_empty = true;
      }
      if (!near_empty && walk(near_lo, near_hi)) {
        is_shaded = true;
      } else if (!near_covers_box || near_empty) {
        double box_cells = 1.0;
        for (int k = 0; k < d; ++k) {
          const std::size_t ks = static_cast<std::size_t>(k);
          box_cells *= static_cast<double>(scan_hi[ks] - scan_lo[ks] + 1);
        }
        if (box_cells > static_cast<double>(bucket.seed_count)) {
          // The box has more cells than the bucket has seeds: probing each
          // cell would cost more than scanning every candidate directly.
          for (const auto& [key, members] : bucket.cells) {
            for (const std::uint32_t i : members) {
              if (shades(seeds[i], later)) {
                is_shaded = true;
                break;
              }
            }
            if (is_shaded) break;
          }
        } else if (walk(scan_lo, scan_hi)) {
          is_shaded = true;
        }
      }
      if (is_shaded) break;
    }
    if (is_shaded) flags[j] = 0;

    // Insert the processed seed (shaded seeds still shade others).
    const int octave =
        later.speed > 0.0 ? std::ilogb(later.speed) : kZeroSpeedBucket;
    SpeedBucket& bucket = buckets[octave];
    for (int k = 0; k < d; ++k) {
      cell[static_cast<std::size_t>(k)] = static_cast<std::int64_t>(
          std::floor(later.location[static_cast<std::size_t>(k)] / h));
    }
    if (bucket.empty) {
      bucket.empty = false;
      bucket.earliest_birth = later.birth_time;
      bucket.cell_lo = cell;
      bucket.cell_hi = cell;
    } else {
      for (int k = 0; k < d; ++k) {
        const std::size_t ks = static_cast<std::size_t>(k);
        bucket.cell_lo[ks] = std::min(bucket.cell_lo[ks], cell[ks]);
        bucket.cell_hi[ks] = std::max(bucket.cell_hi[ks], cell[ks]);
      }
    }
    bucket.cells[cell_key(cell.data(), d)].push_back(static_cast<std::uint32_t>(j));
    ++bucket.seed_count;
  }

  return finish(realization, std::move(flags), ExposureAlgorithm::Indexed, start);
}

ExposureResult exposed(const Realization& realization, ExposureAlgorithm algorithm) {
  switch (algorithm) {
    case ExposureAlgorithm::Naive:
      return exposed_naive(realization);
    case ExposureAlgorithm::Indexed:
      return exposed_indexed(realization);
    case ExposureAlgorithm::Both: {
      ExposureResult naive = exposed_naive(realization);
      ExposureResult indexed = exposed_indexed(realization);
      if (naive.exposed != indexed.exposed) {
        throw Error("exposure algorithms disagree on a realization");
      }
      indexed.algorithm = ExposureAlgorithm::Both;
      return indexed;
    }
  }
  throw DomainError("exposed: unknown algorithm");
}

std::int64_t functional_F(const Realization& realization,
                          const std::vector<std::uint8_t>& exposed_flags) {
  if (exposed_flags.size() != realization.seeds.size()) {
    throw DomainError("functional_F: flag vector size mismatch");
  }
  const WindowGeometry w = realization.spec.effective_window();
  const double a = realization.spec.horizon;
  std::int64_t count = 0;
  for (std::size_t i = 0; i < exposed_flags.size(); ++i) {
    if (!exposed_flags[i]) continue;
    const Seed& seed = realization.seeds[i];
    if (seed.birth_time <= a && w.contains(seed.location)) ++count;
  }
  return count;
}

}  // namespace jmgrow
