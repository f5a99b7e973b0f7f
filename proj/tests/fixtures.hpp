#pragma once

// Worked examples used across the unit and acceptance suites.

#include <array>
#include <cstdint>
#include <random>
#include <vector>

#include "conicpen/conic_pencil.hpp"
#include "conicpen/kinematics.hpp"
#include "conicpen/quadric_pencil.hpp"

namespace fixtures {

using conicpen::HPoint2;
using conicpen::HPoint3;
using conicpen::Point3;
using conicpen::Rational;

inline std::array<HPoint2, 5> conic_points() {
  using conicpen::affine_point;
  return {affine_point(2, 3), affine_point(3, 5), affine_point(7, 7), affine_point(13, 6), affine_point(11, 2)};
}

// Monomial form x0^2, x0x1, x0x2, x1^2, x1x2, x2^2.
inline conicpen::ConicCoeffs conic_reference_monomials() {
  return {Rational(-238868), Rational(57912), Rational(83676), Rational(-5092), Rational(5092), Rational(-15352)};
}

// C is (9,8,3): with (9,3,8) the reference quadric misses C.
inline std::array<HPoint3, 9> quadric_points() {
  using conicpen::affine_point;
  return {affine_point(4, 3, 0),  affine_point(4, 10, 4), affine_point(9, 8, 3),
          affine_point(-1, 7, 2), affine_point(2, 3, 5),  affine_point(-3, 9, 7),
          affine_point(12, 0, 0), affine_point(0, 10, 0), affine_point(0, 0, 5)};
}

inline std::array<std::array<Rational, 4>, 3> quadric_system_rows() {
  return {{{Rational(-103944), Rational(9700), Rational(7410), Rational(-109136)},
           {Rational(3552), Rational(6968), Rational(15936), Rational(-38612)},
           {Rational(-15343), Rational(-9167), Rational(-3699), Rational(19918)}}};
}

inline std::array<Rational, 4> quadric_weights() {
  return {Rational(conicpen::BigInt("-9842336242680")), Rational(conicpen::BigInt("39532196597640")),
          Rational(conicpen::BigInt("19311493179280")), Rational(conicpen::BigInt("14198910257520"))};
}

// Listed order x1^2, x1x2, x1x3, x2^2, x2x3, x3^2, x1, x2, x3, 1 mapped onto
// the monomial slots x0^2, x0x1, x0x2, x0x3, x1^2, x1x2, x1x3, x2^2, x2x3, x3^2.
inline conicpen::QuadricCoeffs quadric_reference_monomials() {
  auto z = [](const char* s) { return Rational(conicpen::BigInt(s)); };
  return {z("-27426081179298420"), z("4710658547758491"), z("4323601509519942"), z("9186924265547229"),
          z("-202095981901413"),   z("22422685213194"),   z("-1191822696049068"), z("-158099339159010"),
          z("-558476852988570"),   z("-740341605937509")};
}

inline std::array<Point3, 5> pentagon() {
  return {Point3{0, 0, 0}, Point3{5, 0, 0}, Point3{1, -1, 0}, Point3{0, -3, 0}, Point3{4, -2, 0}};
}

// First displacement with the two evident digit slips repaired
// (0.1389 and 0.08324 instead give a vector far from unit norm).
inline conicpen::DualQuaternion dq_first() {
  return conicpen::DualQuaternion({0.1380, 0.8324, -0.2391, 0.4806, 1.8555, -0.5330, -0.4972, 0.1428});
}

inline conicpen::DualQuaternion dq_first_bad_digits() {
  return conicpen::DualQuaternion({0.1389, 0.08324, -0.2391, 0.4806, 1.8555, -0.5330, -0.4972, 0.1428});
}

inline conicpen::DualQuaternion dq_second() {
  return conicpen::DualQuaternion({0.6333, 0.3411, -0.3656, 0.5907, 0.7005, -0.7510, 0.1877, -0.2012});
}

inline std::array<Point3, 5> images_first() {
  return {Point3{-2.8265, 0, -2.8265}, Point3{-0.7076, -1.3267, 1.5036}, Point3{-1.8720, 0.5822, -1.9605},
          Point3{-1.2344, 2.5427, -2.8265}, Point3{-0.0700, 0.6337, 0.6376}};
}

inline std::array<Point3, 5> images_second() {
  return {Point3{-1.5036, 0, -1.5036}, Point3{-1.3301, 2.4940, 2.8265}, Point3{-0.4713, 0.4294, -0.6376},
          Point3{1.4891, -0.2082, -1.5036}, Point3{0.6304, 1.8564, 1.9605}};
}

inline const std::vector<double>& root_table() {
  static const std::vector<double> roots{0.1380, 0.3411, 0.3656, 0.4806, 0.2391, 0.5907, 0.6333, 0.8324};
  return roots;
}

inline Point3 reference_translation() { return {-1.9418, 1.2160, -1.3227}; }

// c0 + c1 x + c2 y + c3 z through the first three images.
inline std::array<double, 4> reference_image_plane() { return {3.3069, 3.6699, -2.2981, -2.5000}; }

inline std::array<double, 4> reference_translated_cone_linear() { return {3.5, 3.884, -2.432, -2.6458}; }

// Small random rationals p/q with |p| <= num_max, 1 <= q <= den_max.
class RationalGen {
 public:
  explicit RationalGen(std::uint64_t seed, int num_max = 20, int den_max = 6)
      : rng_(seed), num_(-num_max, num_max), den_(1, den_max) {}

  Rational next() {
    const int p = num_(rng_);
    const int q = den_(rng_);
    return Rational(p, q);
  }
  HPoint2 point2() {
    const Rational x = next();
    return conicpen::affine_point(x, next());
  }
  HPoint3 point3() {
    const Rational x = next();
    const Rational y = next();
    return conicpen::affine_point(x, y, next());
  }
  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
  std::uniform_int_distribution<int> num_;
  std::uniform_int_distribution<int> den_;
};

}  // namespace fixtures
