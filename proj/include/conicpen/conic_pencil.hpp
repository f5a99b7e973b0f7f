#pragma once

// Conics through five points as members of the pencil spanned by two
// line-pair conics of a complete quadrilateral.
//
// Coefficients are stored as (a00, a01, a02, a11, a12, a22) for the form
//   a00 x0^2 + 2 a01 x0 x1 + 2 a02 x0 x2 + a11 x1^2 + 2 a12 x1 x2 + a22 x2^2,
// i.e. the mixed coefficients are half of the monomial coefficients.

#include <array>
#include <cstdint>
#include <span>

#include "conicpen/projective.hpp"

namespace conicpen {

using ConicCoeffs = RatVec<6>;

/// Arithmetic-event counts over the rationals (one count per scalar
/// add/subtract, multiply or divide; bignum cost is ignored).
struct FlopCounter {
  std::uint64_t adds = 0;
  std::uint64_t muls = 0;
  std::uint64_t divs = 0;

  std::uint64_t total() const { return adds + muls + divs; }
  FlopCounter& operator+=(const FlopCounter& o) {
    adds += o.adds;
    muls += o.muls;
    divs += o.divs;
    return *this;
  }
};

/// Canonically scaled, nonzero conic.
class Conic {
 public:
  explicit Conic(ConicCoeffs coeffs);

  const ConicCoeffs& coeffs() const { return coeffs_; }
  Rational evaluate(const HPoint2& p) const;

  /// Coefficients in monomial form (x0^2, x0x1, x0x2, x1^2, x1x2, x2^2).
  ConicCoeffs monomial_coeffs() const;
  static Conic from_monomials(const ConicCoeffs& monomial);

  friend bool operator==(const Conic&, const Conic&) = default;

 private:
  ConicCoeffs coeffs_;
};

Rational evaluate_conic(const ConicCoeffs& c, const RatVec<3>& p);

/// Degenerate conic (l1 . x)(l2 . x).
struct LinePairConic {
  HLine2 first;
  HLine2 second;
  ConicCoeffs coeffs;

  Rational evaluate(const HPoint2& p) const { return evaluate_conic(coeffs, p.coords()); }
};

LinePairConic line_pair(const HLine2& l1, const HLine2& l2, FlopCounter* flops = nullptr);

struct Multipliers {
  Rational lambda;
  Rational mu;
};

/// Weights with lambda*pr(t) + mu*qs(t) = 0, taken as (qs(t), -pr(t)) and
/// negated if needed so that the first nonzero weight is positive.
Multipliers solve_multipliers(const LinePairConic& pr, const LinePairConic& qs, const HPoint2& t,
                              FlopCounter* flops = nullptr);

struct ConicConstruction {
  Conic conic;
  ConicCoeffs raw;                  // lambda*pr + mu*qs before rescaling
  Multipliers multipliers;
  std::array<std::size_t, 5> roles;  // input index playing P, Q, R, S, T
  std::array<RatVec<3>, 4> lines;   // p = S x P, q = P x Q, r = Q x R, s = R x S
  FlopCounter flops;                // counts of the successful attempt
};

/// Points 0..3 play P, Q, R, S (pairing pr / qs), point 4 plays T. When three
/// of P, Q, R, S are collinear or T is indeterminate, the roles are permuted
/// before giving up.
ConicConstruction construct_conic_through_5(std::span<const HPoint2, 5> pts);
Conic conic_through_5(std::span<const HPoint2, 5> pts);

/// Reference construction: cofactors of the 6x6 monomial determinant,
/// expanded by the permutation (Leibniz) formula.
Conic conic_oracle_det(std::span<const HPoint2, 5> pts, FlopCounter* flops = nullptr);

/// pr, qs, tu of the complete quadrilateral on four points (p = S x P,
/// q = P x Q, r = Q x R, s = R x S, t = Q x S, u = P x R).
std::array<LinePairConic, 3> quadrilateral_pairs(const HPoint2& P, const HPoint2& Q,
                                                 const HPoint2& R, const HPoint2& S);

/// Rank of the 3x6 coefficient matrix of three line pairs.
std::size_t three_pair_rank(std::span<const LinePairConic, 3> pairs);

enum class ConicClass { Ellipse, Parabola, Hyperbola, DegeneratePair, DoubleLine, PointConic };

const char* conic_class_name(ConicClass c);

/// Affine chart x0 = 1. Non-degenerate conics are split by the sign of
/// a11*a22 - a12^2; an imaginary ellipse also reports Ellipse.
ConicClass classify_conic(const Conic& c);

struct FlopReport {
  FlopCounter pencil;
  FlopCounter determinant;
  std::uint64_t line_stage = 0;        // cross products for p, q, r, s
  std::uint64_t multiplier_stage = 0;  // evaluation at T and the weight solve
  std::uint64_t expansion_stage = 0;   // expanding lambda*pr + mu*qs
  double ratio = 0.0;                  // pencil.total() / determinant.total()
};

FlopReport flop_report(std::span<const HPoint2, 5> pts);

}  // namespace conicpen
