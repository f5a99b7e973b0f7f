#pragma once

// Two congruent right cones x^2 + y^2 - z^2 = 0 with parallel axes, the second
// with apex at t. Their difference is a plane, and the conic they share lies
// in it.

#include <array>
#include <span>
#include <vector>

#include "conicpen/kinematics.hpp"

namespace conicpen {

/// c0 + c1 x + c2 y + c3 z = 0, coefficients kept as constructed.
struct Plane3f {
  std::array<double, 4> c{};

  double evaluate(Point3 p) const { return c[0] + c[1] * p.x + c[2] * p.y + c[3] * p.z; }
  /// Scaled so the largest-magnitude coefficient is +1.
  Plane3f normalized() const;
};

/// Cofactor plane through three points (same sign convention as the exact
/// three-point plane).
Plane3f plane_through(Point3 a, Point3 b, Point3 c);

struct ConeModel {
  Point3 t{};

  /// (x - t1)^2 + (y - t2)^2 - (z - t3)^2
  double evaluate(Point3 p) const;
  double constant() const { return t.x * t.x + t.y * t.y - t.z * t.z; }
  std::array<double, 3> linear() const { return {-2 * t.x, -2 * t.y, 2 * t.z}; }
  static constexpr std::array<double, 3> quadratic() { return {1, 1, -1}; }
};

ConeModel translated_cone(Point3 t);

/// Translated form minus origin form. Throws ZeroTranslation for t = 0.
Plane3f intersection_plane(Point3 t);

inline constexpr double kConeTol = 1e-3;

/// All real apex translations t for which the translated cone passes through
/// the three origin-cone points; the trivial t = 0 is always first. Throws
/// PointsOffCone or DegenerateTriple.
std::vector<Point3> recover_translation(Point3 p1, Point3 p2, Point3 p3, double cone_tol = kConeTol);

struct PointResidual {
  double origin_cone;
  double translated_cone;
  double plane;
};

struct SharedConicReport {
  std::vector<PointResidual> points;
  Plane3f fitted;        // through the first three points
  Plane3f difference;    // intersection_plane(t)
  double factor;         // least-squares scale with fitted ~ factor * difference
  double factor_spread;  // max |fitted_i - factor * difference_i|
  double max_residual;
  bool within_tol;
};

SharedConicReport shared_conic_check(std::span<const Point3> points, Point3 t, double tol = 2e-2);

}  // namespace conicpen
