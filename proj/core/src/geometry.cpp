#include "jmgrow/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "jmgrow/errors.hpp"
#include "jmgrow/special_functions.hpp"

namespace jmgrow {

WindowGeometry WindowGeometry::box(std::vector<double> side_lengths) {
  if (side_lengths.empty()) {
    throw DomainError("WindowGeometry::box: at least one side length required");
  }
  for (double l : side_lengths) {
    if (!(l > 0.0) || !std::isfinite(l)) {
      throw DomainError("WindowGeometry::box: side lengths must be finite and > 0");
    }
  }
  WindowGeometry w;
  w.shape_ = WindowShape::Box;
  w.dimension_ = static_cast<int>(side_lengths.size());
  w.side_lengths_ = std::move(side_lengths);
  return w;
}

WindowGeometry WindowGeometry::ball(int dimension, double radius) {
  if (dimension < 1) throw DomainError("WindowGeometry::ball: dimension must be >= 1");
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw DomainError("WindowGeometry::ball: radius must be finite and > 0");
  }
  WindowGeometry w;
  w.shape_ = WindowShape::Ball;
  w.dimension_ = dimension;
  w.radius_ = radius;
  return w;
}

const std::vector<double>& WindowGeometry::side_lengths() const {
  if (shape_ != WindowShape::Box) throw DomainError("side_lengths: window is not a box");
  return side_lengths_;
}

double WindowGeometry::radius() const {
  if (shape_ != WindowShape::Ball) throw DomainError("radius: window is not a ball");
  return radius_;
}

double WindowGeometry::volume() const { return intrinsic_volume(dimension_); }

double WindowGeometry::intrinsic_volume(int j) const {
  if (j < 0 || j > dimension_) {
    throw DomainError("intrinsic_volume: order must lie in [0, d], got " + std::to_string(j));
  }
  if (shape_ == WindowShape::Box) {
    // Elementary symmetric polynomial e_j of the side lengths.
    std::vector<double> e(static_cast<std::size_t>(dimension_) + 1, 0.0);
    e[0] = 1.0;
    for (int k = 0; k < dimension_; ++k) {
      for (int i = std::min(k + 1, j); i >= 1; --i) {
        e[i] += side_lengths_[static_cast<std::size_t>(k)] * e[i - 1];
      }
    }
    return e[static_cast<std::size_t>(j)];
  }
  // Ball: V_j(B_r) = binom(d, j) * (kappa_d / kappa_{d-j}) * r^j.
  double binom = 1.0;
  for (int i = 0; i < j; ++i) {
    binom *= static_cast<double>(dimension_ - i) / static_cast<double>(i + 1);
  }
  return binom * unit_ball_volume(dimension_) / unit_ball_volume(dimension_ - j) *
         std::pow(radius_, j);
}

std::vector<double> WindowGeometry::intrinsic_volumes() const {
  std::vector<double> v(static_cast<std::size_t>(dimension_) + 1);
  for (int j = 0; j <= dimension_; ++j) v[static_cast<std::size_t>(j)] = intrinsic_volume(j);
  return v;
}

double WindowGeometry::minkowski_volume(double rho) const {
  if (!(rho >= 0.0)) throw DomainError("minkowski_volume: rho must be >= 0");
  // Steiner: lambda(W + B_rho) = sum_j omega_j rho^j V_{d-j}(W).
  double sum = 0.0;
  for (int j = 0; j <= dimension_; ++j) {
    sum += unit_ball_volume(j) * std::pow(rho, j) * intrinsic_volume(dimension_ - j);
  }
  return sum;
}

double WindowGeometry::diameter() const {
  if (shape_ == WindowShape::Ball) return 2.0 * radius_;
  double s = 0.0;
  for (double l : side_lengths_) s += l * l;
  return std::sqrt(s);
}

double WindowGeometry::distance_to(std::span<const double> point) const {
  if (static_cast<int>(point.size()) != dimension_) {
    throw DomainError("distance_to: point dimension mismatch");
  }
  if (shape_ == WindowShape::Box) {
    double d2 = 0.0;
    for (int k = 0; k < dimension_; ++k) {
      const double y = point[static_cast<std::size_t>(k)];
      const double excess =
          std::max({0.0, -y, y - side_lengths_[static_cast<std::size_t>(k)]});
      d2 += excess * excess;
    }
    return std::sqrt(d2);
  }
  double n2 = 0.0;
  for (double y : point) n2 += y * y;
  return std::max(0.0, std::sqrt(n2) - radius_);
}

bool WindowGeometry::contains(std::span<const double> point) const {
  return distance_to(point) <= 0.0;
}

void WindowGeometry::dilated_bounds(double r, std::vector<double>& lo,
                                    std::vector<double>& hi) const {
  if (!(r >= 0.0)) throw DomainError("dilated_bounds: r must be >= 0");
  lo.assign(static_cast<std::size_t>(dimension_), 0.0);
  hi.assign(static_cast<std::size_t>(dimension_), 0.0);
  for (int k = 0; k < dimension_; ++k) {
    if (shape_ == WindowShape::Box) {
      lo[static_cast<std::size_t>(k)] = -r;
      hi[static_cast<std::size_t>(k)] = side_lengths_[static_cast<std::size_t>(k)] + r;
    } else {
      lo[static_cast<std::size_t>(k)] = -(radius_ + r);
      hi[static_cast<std::size_t>(k)] = radius_ + r;
    }
  }
}

WindowGeometry WindowGeometry::scaled(double factor) const {
  if (!(factor > 0.0) || !std::isfinite(factor)) {
    throw DomainError("scaled: factor must be finite and > 0");
  }
  if (shape_ == WindowShape::Box) {
    std::vector<double> sides = side_lengths_;
    for (double& l : sides) l *= factor;
    return box(std::move(sides));
  }
  return ball(dimension_, radius_ * factor);
}

double ball_overlap_volume(int d, double r1, double r2, double dist) {
  if (!(r1 > 0.0) || !(r2 > 0.0) || !(dist >= 0.0)) {
    throw DomainError("ball_overlap_volume: radii must be > 0 and dist >= 0");
  }
  if (dist >= r1 + r2) return 0.0;
  if (dist <= std::abs(r1 - r2)) {
    const double r = std::min(r1, r2);
    return unit_ball_volume(d) * std::pow(r, d);
  }
  if (d == 1) {
    return std::min(r1 + r2 - dist, 2.0 * std::min(r1, r2));
  }
  if (d == 2) {
    // Circular lens: sum of the two circular segments cut by the chord.
    const double d1 = (dist * dist + r1 * r1 - r2 * r2) / (2.0 * dist);
    const double d2 = dist - d1;
    auto segment = [](double r, double h) {
      const double c = std::clamp(h / r, -1.0, 1.0);
      return r * r * std::acos(c) - h * std::sqrt(std::max(0.0, r * r - h * h));
    };
    return segment(r1, d1) + segment(r2, d2);
  }
  throw DomainError("ball_overlap_volume: partial overlap implemented for d <= 2 only");
}

}  // namespace jmgrow
