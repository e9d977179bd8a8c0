#pragma once

#include <span>
#include <vector>

namespace jmgrow {

enum class WindowShape { Box, Ball };

// Observation window: an axis-aligned box [0, l_1] x ... x [0, l_d] or a
// closed ball of radius r centered at the origin. Both are convex bodies, so
// intrinsic volumes and the Steiner formula apply exactly.
class WindowGeometry {
 public:
  static WindowGeometry box(std::vector<double> side_lengths);
  static WindowGeometry ball(int dimension, double radius);

  WindowShape shape() const { return shape_; }
  int dimension() const { return dimension_; }
  const std::vector<double>& side_lengths() const;  // box only
  double radius() const;                            // ball only

  double volume() const;

  // j-th intrinsic volume V_j, 0 <= j <= d. V_d is the volume, V_0 = 1.
  double intrinsic_volume(int j) const;
  std::vector<double> intrinsic_volumes() const;

  // Volume of the parallel body W + B_rho(0) via the Steiner formula.
  double minkowski_volume(double rho) const;

  double diameter() const;

  // Euclidean distance from a point to the window (0 inside).
  double distance_to(std::span<const double> point) const;
  bool contains(std::span<const double> point) const;

  // Axis-aligned bounding box of the parallel body W + B_r(0).
  void dilated_bounds(double r, std::vector<double>& lo, std::vector<double>& hi) const;

  // Window scaled by a linear factor (all lengths multiplied by `factor`).
  WindowGeometry scaled(double factor) const;

  bool operator==(const WindowGeometry&) const = default;

 private:
  WindowGeometry() = default;

  WindowShape shape_ = WindowShape::Box;
  int dimension_ = 1;
  std::vector<double> side_lengths_;  // box
  double radius_ = 0.0;               // ball
};

// Volume of the intersection of two balls in dimension d, centers at
// distance `dist`. Closed forms for d = 1 (intervals) and d = 2 (lens area).
double ball_overlap_volume(int d, double r1, double r2, double dist);

}  // namespace jmgrow
