#pragma once

// Quadrics through nine points. The first six points A..F are treated as the
// vertices of an octahedron: each complementary pair of vertex triples spans
// a plane pair (a rank <= 2 quadric) through all six vertices, and four such
// pairs span the quadrics on those six points. The remaining three points fix
// the four weights as the null vector of a 3x4 system.
//
// Coefficients are (a00, a01, a02, a03, a11, a12, a13, a22, a23, a33) with the
// same halved mixed-term convention as Conic.

#include <array>
#include <span>
#include <string>
#include <vector>

#include "conicpen/projective.hpp"

namespace conicpen {

using QuadricCoeffs = RatVec<10>;

class Quadric {
 public:
  explicit Quadric(QuadricCoeffs coeffs);

  const QuadricCoeffs& coeffs() const { return coeffs_; }
  Rational evaluate(const HPoint3& p) const;

  /// Monomial form (x0^2, x0x1, x0x2, x0x3, x1^2, x1x2, x1x3, x2^2, x2x3, x3^2).
  QuadricCoeffs monomial_coeffs() const;
  static Quadric from_monomials(const QuadricCoeffs& monomial);

  friend bool operator==(const Quadric&, const Quadric&) = default;

 private:
  QuadricCoeffs coeffs_;
};

Rational evaluate_quadric(const QuadricCoeffs& c, const RatVec<4>& p);

/// A partition of the six vertex labels {0..5} (A..F) into two triples; the
/// first triple always contains vertex 0.
struct VertexSplit {
  std::array<int, 3> first;
  std::array<int, 3> second;

  std::string label() const;  // e.g. "ABF|CDE"
  friend bool operator==(const VertexSplit&, const VertexSplit&) = default;
};

/// The ten complementary splits, ABC|DEF, ABD|CEF, ..., AEF|BCD.
const std::array<VertexSplit, 10>& enumerate_pairs();

/// Four distinct indices into enumerate_pairs().
struct PairChoice {
  std::array<int, 4> splits;

  /// ABF|CDE, ADE|BCF, ADF|BCE, ABE|CDF.
  static PairChoice default_covering();
  /// k-th (0..209) four-element subset of the ten splits in lexicographic order.
  static PairChoice from_index(int k);
  std::string label() const;
};

struct PlanePairQuadric {
  HPlane3 first;
  HPlane3 second;
  QuadricCoeffs coeffs;
};

PlanePairQuadric plane_pair(const HPlane3& a, const HPlane3& b);

struct QuadricConstruction {
  Quadric quadric;
  QuadricCoeffs raw;                     // sum of weight * plane pair, unscaled
  std::array<std::array<Rational, 4>, 3> system;  // rows for the last three points
  std::array<Rational, 4> multipliers;   // alpha, beta, gamma, delta
  PairChoice choice;                     // the choice actually used
  std::array<PlanePairQuadric, 4> pairs;
};

/// pts[0..5] are the octahedron vertices, pts[6..8] the substitution points.
/// If `choice` is degenerate, the remaining choices are tried in index order
/// before DegenerateChoice is raised.
QuadricConstruction construct_quadric_through_9(std::span<const HPoint3, 9> pts, PairChoice choice);
Quadric quadric_through_9(std::span<const HPoint3, 9> pts, PairChoice choice = PairChoice::default_covering());

/// Signed 3x3 minors (-1)^k det(M without column k). Throws RankDeficient.
std::array<Rational, 4> solve_multipliers4(const std::array<std::array<Rational, 4>, 3>& system);

/// Reference construction from the ten signed 9x9 cofactors of the 10x10
/// monomial determinant.
Quadric quadric_oracle_det(std::span<const HPoint3, 9> pts);

bool choice_invariance_check(std::span<const HPoint3, 9> pts, PairChoice a, PairChoice b);

/// True iff the four plane pairs of `choice` are independent and the weight
/// system has rank 3 for these points.
bool choice_is_valid(std::span<const HPoint3, 9> pts, PairChoice choice);

}  // namespace conicpen
