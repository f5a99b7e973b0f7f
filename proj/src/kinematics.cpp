#include "conicpen/kinematics.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

#include "conicpen/error.hpp"

namespace conicpen {

double dot(Point3 a, Point3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

Point3 cross(Point3 a, Point3 b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

double norm(Point3 a) { return std::sqrt(dot(a, a)); }

double distance(Point3 a, Point3 b) { return norm(a - b); }

Quaternion operator*(const Quaternion& a, const Quaternion& b) {
  return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z, a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
          a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x, a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
}

DualQuaternion::DualQuaternion(const std::array<double, 8>& s)
    : x_{s[0], s[1], s[2], s[3]}, y_{s[4], s[5], s[6], s[7]} {}

DualQuaternion DualQuaternion::from_rotation_translation(Point3 axis, double angle, Point3 t) {
  const double n = norm(axis);
  const Point3 u = (1.0 / n) * axis;
  const double s = std::sin(angle / 2);
  const Quaternion r{std::cos(angle / 2), s * u.x, s * u.y, s * u.z};
  // Image = r c r~ + 2 vec(y r~), so y = (1/2) t r.
  const Quaternion tq{0, t.x, t.y, t.z};
  return {r, 0.5 * (tq * r)};
}

std::array<double, 8> DualQuaternion::study() const {
  return {x_.w, x_.x, x_.y, x_.z, y_.w, y_.x, y_.y, y_.z};
}

std::ostream& operator<<(std::ostream& os, const DualQuaternion& q) {
  const auto s = q.study();
  os << '[';
  for (std::size_t i = 0; i < 8; ++i) os << (i ? (i == 4 ? " | " : " ") : "") << s[i];
  return os << ']';
}

double norm_condition(const DualQuaternion& q) { return q.real().norm2() - 1.0; }

double study_condition(const DualQuaternion& q) {
  const auto& x = q.real();
  const auto& y = q.dual();
  return x.w * y.w + x.x * y.x + x.y * y.y + x.z * y.z;
}

Point3 dq_act(const DualQuaternion& q, Point3 p, double tol) {
  const double nc = norm_condition(q), sc = study_condition(q);
  if (!(std::abs(nc) <= tol) || !(std::abs(sc) <= tol)) {
    std::ostringstream msg;
    msg << "norm residual " << nc << ", Study residual " << sc << " exceed " << tol;
    fail(ErrorCode::InvalidDisplacement, msg.str());
  }
  const DualQuaternion image = q * DualQuaternion::from_point(p) * q.eps_conjugate_star();
  const double scale = image.real().w;
  return (1.0 / scale) * image.dual().vec();
}

const char* relation_name(SolutionRelation r) {
  switch (r) {
    case SolutionRelation::DirectPair: return "DirectPair";
    case SolutionRelation::MirroredPair: return "MirroredPair";
    case SolutionRelation::Unrelated: return "Unrelated";
  }
  return "Unknown";
}

namespace {

struct Planar {
  std::array<double, 5> u, v;
};

Planar in_plane_coordinates(const std::array<Point3, 5>& pts) {
  Point3 c{};
  for (const auto& p : pts) c = c + 0.2 * p;
  // Newell normal of the closed polygon.
  Point3 n{};
  for (std::size_t i = 0; i < 5; ++i) {
    const Point3 a = pts[i] - c, b = pts[(i + 1) % 5] - c;
    n = n + cross(a, b);
  }
  const double nn = norm(n);
  n = (1.0 / nn) * n;
  constexpr double eps = 1e-12;
  const bool flip = std::abs(n.z) > eps ? n.z < 0 : (std::abs(n.x) > eps ? n.x < 0 : n.y < 0);
  if (flip) n = -1.0 * n;
  Point3 u = Point3{1, 0, 0} - n.x * n;
  if (norm(u) < 1e-6) u = Point3{0, 1, 0} - n.y * n;
  u = (1.0 / norm(u)) * u;
  const Point3 v = cross(n, u);
  Planar out;
  for (std::size_t i = 0; i < 5; ++i) {
    out.u[i] = dot(pts[i] - c, u);
    out.v[i] = dot(pts[i] - c, v);
  }
  return out;
}

// Best rotation aligning (au, av) onto (bu, bv); returns RMS residual.
double best_rotation_rms(const std::array<double, 5>& au, const std::array<double, 5>& av,
                         const std::array<double, 5>& bu, const std::array<double, 5>& bv) {
  double sdot = 0, scross = 0;
  for (std::size_t i = 0; i < 5; ++i) {
    sdot += au[i] * bu[i] + av[i] * bv[i];
    scross += au[i] * bv[i] - av[i] * bu[i];
  }
  const double th = std::atan2(scross, sdot);
  const double c = std::cos(th), s = std::sin(th);
  double sum = 0;
  for (std::size_t i = 0; i < 5; ++i) {
    const double ru = c * au[i] - s * av[i] - bu[i];
    const double rv = s * au[i] + c * av[i] - bv[i];
    sum += ru * ru + rv * rv;
  }
  return std::sqrt(sum / 5);
}

}  // namespace

SolutionComparison compare_solutions(const DualQuaternion& q1, const DualQuaternion& q2,
                                     std::span<const Point3, 5> source, double tol) {
  double area = 0, extent = 0;
  for (std::size_t i = 1; i < 5; ++i) {
    extent = std::max(extent, distance(source[i], source[0]));
    for (std::size_t j = i + 1; j < 5; ++j)
      area = std::max(area, norm(cross(source[i] - source[0], source[j] - source[0])));
  }
  if (extent == 0 || area <= 1e-12 * extent * extent)
    fail(ErrorCode::DegenerateSource, "source points are collinear");

  std::array<Point3, 5> i1, i2;
  for (std::size_t i = 0; i < 5; ++i) {
    i1[i] = dq_act(q1, source[i]);
    i2[i] = dq_act(q2, source[i]);
  }
  const Planar a = in_plane_coordinates(i1), b = in_plane_coordinates(i2);
  std::array<double, 5> av_reflected;
  for (std::size_t i = 0; i < 5; ++i) av_reflected[i] = -a.v[i];

  const double rot = best_rotation_rms(a.u, a.v, b.u, b.v);
  const double refl = best_rotation_rms(a.u, av_reflected, b.u, b.v);
  const bool mirrored = refl < rot;
  const double best = mirrored ? refl : rot;
  SolutionComparison out{SolutionRelation::Unrelated, best, mirrored ? -1.0 : 1.0};
  if (best < tol) out.relation = mirrored ? SolutionRelation::MirroredPair : SolutionRelation::DirectPair;
  return out;
}

}  // namespace conicpen
