#include "conicpen/projective.hpp"

#include "exact_linalg.hpp"

namespace conicpen {

void canonicalize(std::span<Rational> v) {
  if (all_zero(v)) return;
  BigInt lcm_den = 1;
  for (const auto& r : v) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), r.denominator().get_mpz_t());
  BigInt g = 0;
  for (auto& r : v) {
    r *= Rational(lcm_den);
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), r.numerator().get_mpz_t());
  }
  Rational scale(BigInt(1), g);
  for (const auto& r : v) {
    if (!r.is_zero()) {
      if (r.sign() < 0) scale = -scale;
      break;
    }
  }
  for (auto& r : v) r *= scale;
}

bool all_zero(std::span<const Rational> v) {
  for (const auto& r : v)
    if (!r.is_zero()) return false;
  return true;
}

bool proportional(std::span<const Rational> a, std::span<const Rational> b) {
  if (a.size() != b.size() || all_zero(a) || all_zero(b)) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j)
      if (a[i] * b[j] != a[j] * b[i]) return false;
  // Pairwise 2x2 minors vanish; also rule out a zero pattern mismatch.
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].is_zero() != b[i].is_zero()) return false;
  return true;
}

HPoint2 affine_point(const Rational& x, const Rational& y) { return HPoint2({Rational(1), x, y}); }

HPoint3 affine_point(const Rational& x, const Rational& y, const Rational& z) {
  return HPoint3({Rational(1), x, y, z});
}

RatVec<3> cross(const RatVec<3>& a, const RatVec<3>& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

RatVec<4> plane_cofactors(const RatVec<4>& a, const RatVec<4>& b, const RatVec<4>& c) {
  RatVec<4> out;
  for (std::size_t skip = 0; skip < 4; ++skip) {
    detail::Matrix m(3, std::vector<Rational>(3));
    const RatVec<4>* rows[3] = {&a, &b, &c};
    for (std::size_t r = 0; r < 3; ++r) {
      std::size_t k = 0;
      for (std::size_t col = 0; col < 4; ++col)
        if (col != skip) m[r][k++] = (*rows[r])[col];
    }
    Rational d = detail::determinant(m);
    out[skip] = (skip % 2 == 0) ? d : -d;
  }
  return out;
}

HLine2 join_points2(const HPoint2& a, const HPoint2& b) {
  RatVec<3> l = cross(a.coords(), b.coords());
  if (all_zero(l)) fail(ErrorCode::CoincidentPoints, "join of projectively equal points");
  return HLine2(canonical(l));
}

HPoint2 meet_lines2(const HLine2& l, const HLine2& m) {
  RatVec<3> p = cross(l.coords(), m.coords());
  if (all_zero(p)) fail(ErrorCode::CoincidentLines, "meet of projectively equal lines");
  return HPoint2(canonical(p));
}

HPlane3 plane_through_points3(const HPoint3& a, const HPoint3& b, const HPoint3& c) {
  RatVec<4> pl = plane_cofactors(a.coords(), b.coords(), c.coords());
  if (all_zero(pl)) fail(ErrorCode::CollinearPoints, "three points span less than a plane");
  return HPlane3(canonical(pl));
}

bool collinear(const HPoint2& a, const HPoint2& b, const HPoint2& c) {
  return dot(cross(a.coords(), b.coords()), c.coords()).is_zero();
}

}  // namespace conicpen
