#pragma once

#include <array>
#include <ostream>
#include <span>

namespace conicpen {

struct Point3 {
  double x = 0, y = 0, z = 0;

  friend Point3 operator+(Point3 a, Point3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
  friend Point3 operator-(Point3 a, Point3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
  friend Point3 operator*(double s, Point3 a) { return {s * a.x, s * a.y, s * a.z}; }
  friend bool operator==(const Point3&, const Point3&) = default;
};

double dot(Point3 a, Point3 b);
Point3 cross(Point3 a, Point3 b);
double norm(Point3 a);
double distance(Point3 a, Point3 b);

/// Hamilton quaternion, scalar first.
struct Quaternion {
  double w = 0, x = 0, y = 0, z = 0;

  Quaternion conj() const { return {w, -x, -y, -z}; }
  double norm2() const { return w * w + x * x + y * y + z * z; }
  Point3 vec() const { return {x, y, z}; }

  friend Quaternion operator*(const Quaternion& a, const Quaternion& b);
  friend Quaternion operator+(const Quaternion& a, const Quaternion& b) {
    return {a.w + b.w, a.x + b.x, a.y + b.y, a.z + b.z};
  }
  friend Quaternion operator-(const Quaternion& a, const Quaternion& b) {
    return {a.w - b.w, a.x - b.x, a.y - b.y, a.z - b.z};
  }
  friend Quaternion operator*(double s, const Quaternion& a) { return {s * a.w, s * a.x, s * a.y, s * a.z}; }
};

/// Spatial displacement as eight Study parameters (x0..x3 | y0..y3), the
/// dual quaternion x + eps*y. Homogeneous: q and -q act identically.
class DualQuaternion {
 public:
  DualQuaternion() = default;
  DualQuaternion(Quaternion real, Quaternion dual) : x_(real), y_(dual) {}
  explicit DualQuaternion(const std::array<double, 8>& study);

  static DualQuaternion identity() { return {{1, 0, 0, 0}, {0, 0, 0, 0}}; }
  /// Rotation by `angle` about the unit `axis` through the origin, then translation by `t`.
  static DualQuaternion from_rotation_translation(Point3 axis, double angle, Point3 t);
  /// Point C as the dual quaternion 1 + eps*(0, c).
  static DualQuaternion from_point(Point3 c) { return {{1, 0, 0, 0}, {0, c.x, c.y, c.z}}; }

  const Quaternion& real() const { return x_; }
  const Quaternion& dual() const { return y_; }
  std::array<double, 8> study() const;

  /// Conjugate of the eps-conjugate: (x0, -x1, -x2, -x3 | -y0, y1, y2, y3).
  DualQuaternion eps_conjugate_star() const { return {x_.conj(), -1.0 * y_.conj()}; }

  friend DualQuaternion operator*(const DualQuaternion& a, const DualQuaternion& b) {
    return {a.x_ * b.x_, a.x_ * b.y_ + a.y_ * b.x_};
  }
  friend DualQuaternion operator-(const DualQuaternion& a) { return {-1.0 * a.x_, -1.0 * a.y_}; }

  friend std::ostream& operator<<(std::ostream& os, const DualQuaternion& q);

 private:
  Quaternion x_{1, 0, 0, 0};
  Quaternion y_{0, 0, 0, 0};
};

/// x0^2 + x1^2 + x2^2 + x3^2 - 1
double norm_condition(const DualQuaternion& q);
/// x0 y0 + x1 y1 + x2 y2 + x3 y3
double study_condition(const DualQuaternion& q);

/// Default validity tolerance on |norm_condition| and |study_condition|;
/// admits displacements given to four decimals.
inline constexpr double kDisplacementTol = 1e-3;

/// The sandwich Q C Q'_eps computed by dual-quaternion multiplication; the
/// dual vector part divided by the scalar x.x is the image point. Throws
/// InvalidDisplacement when either condition exceeds `tol`.
Point3 dq_act(const DualQuaternion& q, Point3 p, double tol = kDisplacementTol);

enum class SolutionRelation { DirectPair, MirroredPair, Unrelated };

const char* relation_name(SolutionRelation r);

struct SolutionComparison {
  SolutionRelation relation;
  double residual;     // RMS residual of the best in-plane isometry
  double determinant;  // +1 or -1 for that isometry
};

/// Maps `source` (coplanar, z = 0) through both displacements, expresses each
/// image pentagon in 2D coordinates of its own plane and aligns them by
/// orthogonal Procrustes (rotation or reflection, centroids matched).
///
/// Each image frame is fixed by the image plane alone: normal oriented with
/// positive z component (x, then y as tie-breaks), first axis the projection
/// of the global x axis onto the plane. An in-plane mirror image of the
/// pentagon therefore aligns with determinant -1.
SolutionComparison compare_solutions(const DualQuaternion& q1, const DualQuaternion& q2,
                                     std::span<const Point3, 5> source, double tol = 1e-6);

}  // namespace conicpen
