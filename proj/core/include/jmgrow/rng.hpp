#pragma once

#include <cstdint>
#include <random>

namespace jmgrow {

// splitmix64 step; used only to derive well-mixed substream seeds.
inline std::uint64_t splitmix64_next(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Seed for substream `index` of a master seed. Distinct indices give
// statistically independent streams regardless of how replications are
// distributed over threads.
inline std::uint64_t substream_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t s = master;
  const std::uint64_t a = splitmix64_next(s);
  s ^= index * 0xda942042e4dd58b5ULL;
  const std::uint64_t b = splitmix64_next(s);
  return a ^ (b + 0x9e3779b97f4a7c15ULL + (index << 1));
}

// One replication's private generator. Distribution objects are constructed
// fresh per draw so no hidden state leaks between draws.
class RngStream {
 public:
  RngStream(std::uint64_t master, std::uint64_t index)
      : master_(master), index_(index), engine_(substream_seed(master, index)) {}

  std::uint64_t master() const { return master_; }
  std::uint64_t index() const { return index_; }
  std::mt19937_64& engine() { return engine_; }

  // Uniform on (0, 1); never returns an exact 0 or 1.
  double uniform() {
    double u;
    do {
      u = std::uniform_real_distribution<double>(0.0, 1.0)(engine_);
    } while (u <= 0.0 || u >= 1.0);
    return u;
  }

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }

  double normal() { return std::normal_distribution<double>(0.0, 1.0)(engine_); }

  double gamma(double shape) {
    return std::gamma_distribution<double>(shape, 1.0)(engine_);
  }

  // Beta(a, b) via two gamma draws.
  double beta(double a, double b) {
    for (;;) {
      const double x = gamma(a);
      const double y = gamma(b);
      if (x + y > 0.0) return x / (x + y);
    }
  }

  long long poisson(double mean) {
    return std::poisson_distribution<long long>(mean)(engine_);
  }

  // Uniform index in [0, n).
  std::size_t index_below(std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine_);
  }

 private:
  std::uint64_t master_;
  std::uint64_t index_;
  std::mt19937_64 engine_;
};

}  // namespace jmgrow
