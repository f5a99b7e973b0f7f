#include "conicpen/cone_pair.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "conicpen/error.hpp"

namespace conicpen {

namespace {

double origin_cone(Point3 p) { return p.x * p.x + p.y * p.y - p.z * p.z; }

double lorentz(Point3 t) { return t.x * t.x + t.y * t.y - t.z * t.z; }

// Coefficient row of t in the plane equation evaluated at p.
Point3 kx_row(Point3 p) { return {-2 * p.x, -2 * p.y, 2 * p.z}; }

}  // namespace

Plane3f Plane3f::normalized() const {
  std::size_t k = 0;
  for (std::size_t i = 1; i < 4; ++i)
    if (std::abs(c[i]) > std::abs(c[k])) k = i;
  Plane3f out = *this;
  if (c[k] == 0) return out;
  for (double& v : out.c) v /= c[k];
  return out;
}

Plane3f plane_through(Point3 a, Point3 b, Point3 c) {
  // (-1)^i det of the 3x3 minor of [1 x y z] rows with column i removed.
  const double m[3][4] = {{1, a.x, a.y, a.z}, {1, b.x, b.y, b.z}, {1, c.x, c.y, c.z}};
  Plane3f out;
  for (int skip = 0; skip < 4; ++skip) {
    double s[3][3];
    for (int r = 0; r < 3; ++r)
      for (int col = 0, k = 0; col < 4; ++col)
        if (col != skip) s[r][k++] = m[r][col];
    const double det = s[0][0] * (s[1][1] * s[2][2] - s[1][2] * s[2][1]) -
                       s[0][1] * (s[1][0] * s[2][2] - s[1][2] * s[2][0]) +
                       s[0][2] * (s[1][0] * s[2][1] - s[1][1] * s[2][0]);
    out.c[skip] = (skip % 2 ? -1 : 1) * det;
  }
  return out;
}

double ConeModel::evaluate(Point3 p) const {
  const double dx = p.x - t.x, dy = p.y - t.y, dz = p.z - t.z;
  return dx * dx + dy * dy - dz * dz;
}

ConeModel translated_cone(Point3 t) { return ConeModel{t}; }

Plane3f intersection_plane(Point3 t) {
  if (t.x == 0 && t.y == 0 && t.z == 0) fail(ErrorCode::ZeroTranslation, "translation is zero");
  const ConeModel k{t};
  const auto lin = k.linear();
  return Plane3f{{k.constant(), lin[0], lin[1], lin[2]}};
}

std::vector<Point3> recover_translation(Point3 p1, Point3 p2, Point3 p3, double cone_tol) {
  for (Point3 p : {p1, p2, p3}) {
    if (const double r = origin_cone(p); !(std::abs(r) <= cone_tol)) {
      std::ostringstream msg;
      msg << "cone residual " << r << " at (" << p.x << ", " << p.y << ", " << p.z << ")";
      fail(ErrorCode::PointsOffCone, msg.str());
    }
  }
  const Point3 k1 = kx_row(p1);
  const Point3 r2 = kx_row(p2) - k1, r3 = kx_row(p3) - k1;
  const Point3 d = cross(r2, r3);
  const double scale = std::max(norm(r2) * norm(r3), 1e-300);
  if (norm(d) <= 1e-12 * scale)
    fail(ErrorCode::DegenerateTriple, "linear equations in t have rank below 2");

  // t = s d:  s^2 L(d) + s (k1 . d) = 0.
  std::vector<Point3> out{{0, 0, 0}};
  const double qa = lorentz(d), qb = dot(k1, d);
  const double dn2 = dot(d, d);
  if (std::abs(qa) <= 1e-14 * dn2) {
    if (std::abs(qb) <= 1e-14 * std::sqrt(dn2) * norm(k1))
      fail(ErrorCode::DegenerateTriple, "every multiple of the null direction solves the system");
    return out;
  }
  out.push_back((-qb / qa) * d);
  return out;
}

SharedConicReport shared_conic_check(std::span<const Point3> points, Point3 t, double tol) {
  SharedConicReport rep{};
  const ConeModel k{t};
  const bool has_plane = !(t.x == 0 && t.y == 0 && t.z == 0);
  if (has_plane) rep.difference = intersection_plane(t);
  for (Point3 p : points) {
    PointResidual r{origin_cone(p), k.evaluate(p), has_plane ? rep.difference.evaluate(p) : 0.0};
    rep.max_residual =
        std::max({rep.max_residual, std::abs(r.origin_cone), std::abs(r.translated_cone), std::abs(r.plane)});
    rep.points.push_back(r);
  }
  if (points.size() >= 3) {
    rep.fitted = plane_through(points[0], points[1], points[2]);
    double num = 0, den = 0;
    for (std::size_t i = 0; i < 4; ++i) {
      num += rep.fitted.c[i] * rep.difference.c[i];
      den += rep.difference.c[i] * rep.difference.c[i];
    }
    rep.factor = den > 0 ? num / den : 0.0;
    for (std::size_t i = 0; i < 4; ++i)
      rep.factor_spread = std::max(rep.factor_spread, std::abs(rep.fitted.c[i] - rep.factor * rep.difference.c[i]));
  }
  rep.within_tol = rep.max_residual < tol;
  return rep;
}

}  // namespace conicpen
