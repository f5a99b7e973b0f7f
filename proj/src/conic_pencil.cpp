#include "conicpen/conic_pencil.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <vector>

#include "exact_linalg.hpp"

namespace conicpen {

namespace {

struct Counted {
  FlopCounter* f;
  Rational mul(const Rational& a, const Rational& b) const {
    if (f) ++f->muls;
    return a * b;
  }
  Rational add(const Rational& a, const Rational& b) const {
    if (f) ++f->adds;
    return a + b;
  }
  Rational sub(const Rational& a, const Rational& b) const {
    if (f) ++f->adds;
    return a - b;
  }
  Rational neg(const Rational& a) const {
    if (f) ++f->adds;
    return -a;
  }
  Rational half(const Rational& a) const {
    if (f) ++f->divs;
    return a / Rational(2);
  }
};

RatVec<3> counted_cross(const RatVec<3>& a, const RatVec<3>& b, const Counted& k) {
  return {k.sub(k.mul(a[1], b[2]), k.mul(a[2], b[1])), k.sub(k.mul(a[2], b[0]), k.mul(a[0], b[2])),
          k.sub(k.mul(a[0], b[1]), k.mul(a[1], b[0]))};
}

Rational counted_dot(const RatVec<3>& a, const RatVec<3>& b, const Counted& k) {
  return k.add(k.add(k.mul(a[0], b[0]), k.mul(a[1], b[1])), k.mul(a[2], b[2]));
}

// Index pairs (i, j) of the six coefficient slots.
constexpr std::array<std::array<int, 2>, 6> kSlots{{{0, 0}, {0, 1}, {0, 2}, {1, 1}, {1, 2}, {2, 2}}};

ConicCoeffs expand_product(const RatVec<3>& l1, const RatVec<3>& l2, const Counted& k) {
  ConicCoeffs out;
  for (std::size_t s = 0; s < 6; ++s) {
    const auto [i, j] = kSlots[s];
    if (i == j)
      out[s] = k.mul(l1[i], l2[i]);
    else
      out[s] = k.half(k.add(k.mul(l1[i], l2[j]), k.mul(l1[j], l2[i])));
  }
  return out;
}

struct Permutation {
  std::array<int, 5> p;
  int sign;
};

const std::vector<Permutation>& permutations5() {
  static const std::vector<Permutation> perms = [] {
    std::vector<Permutation> out;
    std::array<int, 5> p{0, 1, 2, 3, 4};
    do {
      int inversions = 0;
      for (int i = 0; i < 5; ++i)
        for (int j = i + 1; j < 5; ++j)
          if (p[i] > p[j]) ++inversions;
      out.push_back({p, inversions % 2 ? -1 : 1});
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
  }();
  return perms;
}

Rational leibniz5(const std::array<std::array<const Rational*, 5>, 5>& m, const Counted& k) {
  Rational sum;
  bool first = true;
  for (const auto& perm : permutations5()) {
    Rational term = *m[0][perm.p[0]];
    for (int r = 1; r < 5; ++r) term = k.mul(term, *m[r][perm.p[r]]);
    if (first) {
      sum = perm.sign > 0 ? term : -term;
      first = false;
    } else {
      sum = perm.sign > 0 ? k.add(sum, term) : k.sub(sum, term);
    }
  }
  return sum;
}

std::optional<ConicConstruction> try_roles(std::span<const HPoint2, 5> pts,
                                           const std::array<std::size_t, 5>& roles) {
  const auto& P = pts[roles[0]];
  const auto& Q = pts[roles[1]];
  const auto& R = pts[roles[2]];
  const auto& S = pts[roles[3]];
  const auto& T = pts[roles[4]];
  if (collinear(P, Q, R) || collinear(P, Q, S) || collinear(P, R, S) || collinear(Q, R, S))
    return std::nullopt;

  FlopCounter flops;
  Counted k{&flops};
  std::array<RatVec<3>, 4> lines{counted_cross(S.coords(), P.coords(), k),
                                 counted_cross(P.coords(), Q.coords(), k),
                                 counted_cross(Q.coords(), R.coords(), k),
                                 counted_cross(R.coords(), S.coords(), k)};

  const Rational pr_t = k.mul(counted_dot(lines[0], T.coords(), k), counted_dot(lines[2], T.coords(), k));
  const Rational qs_t = k.mul(counted_dot(lines[1], T.coords(), k), counted_dot(lines[3], T.coords(), k));
  if (pr_t.is_zero() && qs_t.is_zero()) return std::nullopt;
  Multipliers m{qs_t, k.neg(pr_t)};
  if (m.lambda.sign() < 0 || (m.lambda.is_zero() && m.mu.sign() < 0)) m = {-m.lambda, -m.mu};

  const ConicCoeffs pr = expand_product(lines[0], lines[2], k);
  const ConicCoeffs qs = expand_product(lines[1], lines[3], k);
  ConicCoeffs raw;
  for (std::size_t s = 0; s < 6; ++s) raw[s] = k.add(k.mul(m.lambda, pr[s]), k.mul(m.mu, qs[s]));

  return ConicConstruction{Conic(raw), raw, m, roles, lines, flops};
}

}  // namespace

Conic::Conic(ConicCoeffs coeffs) : coeffs_(std::move(coeffs)) {
  if (all_zero(coeffs_)) fail(ErrorCode::ZeroVector, "conic with all coefficients zero");
  canonicalize(coeffs_);
}

Rational evaluate_conic(const ConicCoeffs& c, const RatVec<3>& p) {
  Rational v;
  for (std::size_t s = 0; s < 6; ++s) {
    const auto [i, j] = kSlots[s];
    Rational term = c[s] * p[i] * p[j];
    v += (i == j) ? term : term * Rational(2);
  }
  return v;
}

Rational Conic::evaluate(const HPoint2& p) const { return evaluate_conic(coeffs_, p.coords()); }

ConicCoeffs Conic::monomial_coeffs() const {
  ConicCoeffs m = coeffs_;
  for (std::size_t s : {1, 2, 4}) m[s] *= Rational(2);
  return m;
}

Conic Conic::from_monomials(const ConicCoeffs& monomial) {
  ConicCoeffs c = monomial;
  for (std::size_t s : {1, 2, 4}) c[s] /= Rational(2);
  return Conic(c);
}

LinePairConic line_pair(const HLine2& l1, const HLine2& l2, FlopCounter* flops) {
  return {l1, l2, expand_product(l1.coords(), l2.coords(), Counted{flops})};
}

Multipliers solve_multipliers(const LinePairConic& pr, const LinePairConic& qs, const HPoint2& t,
                              FlopCounter* flops) {
  Counted k{flops};
  const Rational pr_t =
      k.mul(counted_dot(pr.first.coords(), t.coords(), k), counted_dot(pr.second.coords(), t.coords(), k));
  const Rational qs_t =
      k.mul(counted_dot(qs.first.coords(), t.coords(), k), counted_dot(qs.second.coords(), t.coords(), k));
  if (pr_t.is_zero() && qs_t.is_zero())
    fail(ErrorCode::IndeterminatePencil, "fifth point lies on both line pairs");
  Multipliers m{qs_t, k.neg(pr_t)};
  if (m.lambda.sign() < 0 || (m.lambda.is_zero() && m.mu.sign() < 0)) m = {-m.lambda, -m.mu};
  return m;
}

ConicConstruction construct_conic_through_5(std::span<const HPoint2, 5> pts) {
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = i + 1; j < 5; ++j)
      if (pts[i].same_as(pts[j]))
        fail(ErrorCode::DuplicatePoints,
             "input points " + std::to_string(i) + " and " + std::to_string(j) + " coincide");

  std::array<std::size_t, 5> roles{0, 1, 2, 3, 4};
  do {
    if (auto c = try_roles(pts, roles)) return std::move(*c);
  } while (std::next_permutation(roles.begin(), roles.end()));
  fail(ErrorCode::DegenerateConfiguration, "no labeling yields a complete quadrilateral (four points collinear?)");
}

Conic conic_through_5(std::span<const HPoint2, 5> pts) { return construct_conic_through_5(pts).conic; }

Conic conic_oracle_det(std::span<const HPoint2, 5> pts, FlopCounter* flops) {
  Counted k{flops};
  std::array<std::array<Rational, 6>, 5> rows;
  for (std::size_t r = 0; r < 5; ++r) {
    const auto& p = pts[r].coords();
    for (std::size_t s = 0; s < 6; ++s) rows[r][s] = k.mul(p[kSlots[s][0]], p[kSlots[s][1]]);
  }
  ConicCoeffs monomial;
  for (std::size_t skip = 0; skip < 6; ++skip) {
    std::array<std::array<const Rational*, 5>, 5> minor;
    for (std::size_t r = 0; r < 5; ++r) {
      std::size_t c2 = 0;
      for (std::size_t c = 0; c < 6; ++c)
        if (c != skip) minor[r][c2++] = &rows[r][c];
    }
    Rational d = leibniz5(minor, k);
    monomial[skip] = skip % 2 == 0 ? d : -d;
  }
  if (all_zero(monomial))
    fail(ErrorCode::DegenerateConfiguration, "all 5x5 sub-determinants vanish");
  for (std::size_t s : {1, 2, 4}) monomial[s] = k.half(monomial[s]);
  return Conic(monomial);
}

std::array<LinePairConic, 3> quadrilateral_pairs(const HPoint2& P, const HPoint2& Q, const HPoint2& R,
                                                 const HPoint2& S) {
  auto line = [](const HPoint2& a, const HPoint2& b) {
    RatVec<3> l = cross(a.coords(), b.coords());
    if (all_zero(l)) fail(ErrorCode::CoincidentPoints, "quadrilateral vertices coincide");
    return HLine2(l);
  };
  return {line_pair(line(S, P), line(Q, R)), line_pair(line(P, Q), line(R, S)),
          line_pair(line(Q, S), line(P, R))};
}

std::size_t three_pair_rank(std::span<const LinePairConic, 3> pairs) {
  detail::Matrix m;
  for (const auto& p : pairs) m.emplace_back(p.coeffs.begin(), p.coeffs.end());
  return detail::rank(std::move(m));
}

const char* conic_class_name(ConicClass c) {
  switch (c) {
    case ConicClass::Ellipse: return "Ellipse";
    case ConicClass::Parabola: return "Parabola";
    case ConicClass::Hyperbola: return "Hyperbola";
    case ConicClass::DegeneratePair: return "DegeneratePair";
    case ConicClass::DoubleLine: return "DoubleLine";
    case ConicClass::PointConic: return "PointConic";
  }
  return "Unknown";
}

ConicClass classify_conic(const Conic& conic) {
  const auto& a = conic.coeffs();
  const Rational &a00 = a[0], &a01 = a[1], &a02 = a[2], &a11 = a[3], &a12 = a[4], &a22 = a[5];
  detail::Matrix m{{a00, a01, a02}, {a01, a11, a12}, {a02, a12, a22}};
  const Rational det = detail::determinant(m);
  if (!det.is_zero()) {
    const Rational affine = a11 * a22 - a12 * a12;
    if (affine.sign() > 0) return ConicClass::Ellipse;
    if (affine.sign() < 0) return ConicClass::Hyperbola;
    return ConicClass::Parabola;
  }
  if (detail::rank(m) == 1) return ConicClass::DoubleLine;
  // Rank 2: the sum of principal 2x2 minors is the product of the two
  // nonzero eigenvalues.
  const Rational e2 = (a00 * a11 - a01 * a01) + (a00 * a22 - a02 * a02) + (a11 * a22 - a12 * a12);
  return e2.sign() < 0 ? ConicClass::DegeneratePair : ConicClass::PointConic;
}

FlopReport flop_report(std::span<const HPoint2, 5> pts) {
  FlopReport rep;
  const ConicConstruction c = construct_conic_through_5(pts);
  rep.pencil = c.flops;

  // Stage split, replayed on the chosen roles with separate counters.
  const auto& T = pts[c.roles[4]];
  FlopCounter lines_f, mult_f;
  {
    Counted k{&lines_f};
    for (auto [a, b] : {std::pair{3, 0}, {0, 1}, {1, 2}, {2, 3}})
      (void)counted_cross(pts[c.roles[a]].coords(), pts[c.roles[b]].coords(), k);
  }
  {
    Counted k{&mult_f};
    (void)k.mul(counted_dot(c.lines[0], T.coords(), k), counted_dot(c.lines[2], T.coords(), k));
    (void)k.neg(k.mul(counted_dot(c.lines[1], T.coords(), k), counted_dot(c.lines[3], T.coords(), k)));
  }
  rep.line_stage = lines_f.total();
  rep.multiplier_stage = mult_f.total();
  rep.expansion_stage = rep.pencil.total() - rep.line_stage - rep.multiplier_stage;

  (void)conic_oracle_det(pts, &rep.determinant);
  rep.ratio = static_cast<double>(rep.pencil.total()) / static_cast<double>(rep.determinant.total());
  return rep;
}

}  // namespace conicpen
