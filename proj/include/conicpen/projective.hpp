#pragma once

// Exact homogeneous-coordinate primitives in the projective plane and space.
// Points and hyperplanes are dual: a point lies on a hyperplane iff the inner
// product of their coordinate vectors vanishes.

#include <array>
#include <cstddef>
#include <ostream>
#include <span>
#include <string>

#include "conicpen/error.hpp"
#include "conicpen/rational.hpp"

namespace conicpen {

template <std::size_t N>
using RatVec = std::array<Rational, N>;

/// Rescales `v` in place to integer entries with gcd 1 and first nonzero entry
/// positive. An all-zero vector is left untouched.
void canonicalize(std::span<Rational> v);

template <std::size_t N>
RatVec<N> canonical(RatVec<N> v) {
  canonicalize(v);
  return v;
}

bool all_zero(std::span<const Rational> v);

/// True iff `a` and `b` are nonzero multiples of each other.
bool proportional(std::span<const Rational> a, std::span<const Rational> b);

template <std::size_t N, class Tag>
class Homogeneous {
 public:
  static constexpr std::size_t dimension = N;

  explicit Homogeneous(RatVec<N> coords) : coords_(std::move(coords)) {
    if (all_zero(coords_)) fail(ErrorCode::ZeroVector, "homogeneous coordinates all zero");
  }

  const RatVec<N>& coords() const { return coords_; }
  const Rational& operator[](std::size_t i) const { return coords_[i]; }

  Homogeneous canonical() const { return Homogeneous(conicpen::canonical(coords_)); }

  /// Projective equality (equal up to a nonzero scale).
  bool same_as(const Homogeneous& o) const { return proportional(coords_, o.coords_); }

  friend bool operator==(const Homogeneous& a, const Homogeneous& b) {
    return a.coords_ == b.coords_;
  }

  friend std::ostream& operator<<(std::ostream& os, const Homogeneous& h) {
    os << '{';
    for (std::size_t i = 0; i < N; ++i) os << (i ? ":" : "") << h.coords_[i];
    return os << '}';
  }

 private:
  RatVec<N> coords_;
};

struct PointTag {};
struct HyperplaneTag {};

using HPoint2 = Homogeneous<3, PointTag>;
using HLine2 = Homogeneous<3, HyperplaneTag>;
using HPoint3 = Homogeneous<4, PointTag>;
using HPlane3 = Homogeneous<4, HyperplaneTag>;

/// Affine helpers: (x, y) -> {1:x:y}, (x, y, z) -> {1:x:y:z}.
HPoint2 affine_point(const Rational& x, const Rational& y);
HPoint3 affine_point(const Rational& x, const Rational& y, const Rational& z);

/// Plain cross product of homogeneous triples, no rescaling.
RatVec<3> cross(const RatVec<3>& a, const RatVec<3>& b);

/// Oriented plane coordinates of three points: entry i is (-1)^i times the
/// 3x3 minor of the stacked coordinate rows with column i removed, so that
/// incidence(x, plane) = det[x; a; b; c]. No rescaling.
RatVec<4> plane_cofactors(const RatVec<4>& a, const RatVec<4>& b, const RatVec<4>& c);

HLine2 join_points2(const HPoint2& a, const HPoint2& b);
HPoint2 meet_lines2(const HLine2& l, const HLine2& m);
HPlane3 plane_through_points3(const HPoint3& a, const HPoint3& b, const HPoint3& c);

template <std::size_t N>
Rational dot(const RatVec<N>& a, const RatVec<N>& b) {
  Rational s;
  for (std::size_t i = 0; i < N; ++i) s += a[i] * b[i];
  return s;
}

/// Residual of the linear form: zero iff the point lies on the hyperplane.
template <std::size_t N>
Rational incidence(const Homogeneous<N, PointTag>& p, const Homogeneous<N, HyperplaneTag>& h) {
  return dot(p.coords(), h.coords());
}

bool collinear(const HPoint2& a, const HPoint2& b, const HPoint2& c);

}  // namespace conicpen
