#include "conicpen/quadric_pencil.hpp"

#include <algorithm>
#include <optional>

#include "exact_linalg.hpp"

namespace conicpen {

namespace {

constexpr std::array<std::array<int, 2>, 10> kSlots{
    {{0, 0}, {0, 1}, {0, 2}, {0, 3}, {1, 1}, {1, 2}, {1, 3}, {2, 2}, {2, 3}, {3, 3}}};

constexpr bool is_mixed(std::size_t s) { return kSlots[s][0] != kSlots[s][1]; }

QuadricCoeffs expand_product(const RatVec<4>& a, const RatVec<4>& b) {
  QuadricCoeffs out;
  for (std::size_t s = 0; s < 10; ++s) {
    const auto [i, j] = kSlots[s];
    out[s] = i == j ? a[i] * b[i] : (a[i] * b[j] + a[j] * b[i]) / Rational(2);
  }
  return out;
}

const std::vector<PairChoice>& all_choices() {
  static const std::vector<PairChoice> choices = [] {
    std::vector<PairChoice> out;
    for (int a = 0; a < 10; ++a)
      for (int b = a + 1; b < 10; ++b)
        for (int c = b + 1; c < 10; ++c)
          for (int d = c + 1; d < 10; ++d) out.push_back({{a, b, c, d}});
    return out;
  }();
  return choices;
}

void check_choice(const PairChoice& choice) {
  for (int s : choice.splits)
    if (s < 0 || s >= 10) fail(ErrorCode::InvalidArgument, "split index out of range");
  auto sorted = choice.splits;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    fail(ErrorCode::InvalidArgument, "pair choice repeats a split");
}

RatVec<4> triple_plane(std::span<const HPoint3, 9> pts, const std::array<int, 3>& t) {
  return plane_cofactors(pts[t[0]].coords(), pts[t[1]].coords(), pts[t[2]].coords());
}

char vertex_label(int v) { return static_cast<char>('A' + v); }

std::optional<QuadricConstruction> attempt(std::span<const HPoint3, 9> pts, const PairChoice& choice) {
  const auto& splits = enumerate_pairs();
  std::array<RatVec<4>, 4> firsts, seconds;
  for (std::size_t k = 0; k < 4; ++k) {
    const VertexSplit& sp = splits[choice.splits[k]];
    firsts[k] = triple_plane(pts, sp.first);
    seconds[k] = triple_plane(pts, sp.second);
    if (all_zero(firsts[k]) || all_zero(seconds[k]))
      fail(ErrorCode::CoplanarTriple, "vertex triple of " + sp.label() + " is collinear");
  }

  std::array<QuadricCoeffs, 4> products;
  detail::Matrix basis;
  for (std::size_t k = 0; k < 4; ++k) {
    products[k] = expand_product(firsts[k], seconds[k]);
    basis.emplace_back(products[k].begin(), products[k].end());
  }
  if (detail::rank(basis) < 4) return std::nullopt;

  std::array<std::array<Rational, 4>, 3> system;
  for (std::size_t r = 0; r < 3; ++r) {
    const auto& x = pts[6 + r].coords();
    for (std::size_t k = 0; k < 4; ++k) system[r][k] = dot(firsts[k], x) * dot(seconds[k], x);
  }
  std::array<Rational, 4> mult;
  try {
    mult = solve_multipliers4(system);
  } catch (const GeometryError& e) {
    if (e.code() == ErrorCode::RankDeficient) return std::nullopt;
    throw;
  }

  QuadricCoeffs raw;
  for (std::size_t k = 0; k < 4; ++k)
    for (std::size_t s = 0; s < 10; ++s) raw[s] += mult[k] * products[k][s];
  if (all_zero(raw)) return std::nullopt;

  return QuadricConstruction{
      Quadric(raw),
      raw,
      system,
      mult,
      choice,
      {PlanePairQuadric{HPlane3(firsts[0]), HPlane3(seconds[0]), products[0]},
       PlanePairQuadric{HPlane3(firsts[1]), HPlane3(seconds[1]), products[1]},
       PlanePairQuadric{HPlane3(firsts[2]), HPlane3(seconds[2]), products[2]},
       PlanePairQuadric{HPlane3(firsts[3]), HPlane3(seconds[3]), products[3]}}};
}

}  // namespace

Quadric::Quadric(QuadricCoeffs coeffs) : coeffs_(std::move(coeffs)) {
  if (all_zero(coeffs_)) fail(ErrorCode::ZeroVector, "quadric with all coefficients zero");
  canonicalize(coeffs_);
}

Rational evaluate_quadric(const QuadricCoeffs& c, const RatVec<4>& p) {
  Rational v;
  for (std::size_t s = 0; s < 10; ++s) {
    Rational term = c[s] * p[kSlots[s][0]] * p[kSlots[s][1]];
    v += is_mixed(s) ? term * Rational(2) : term;
  }
  return v;
}

Rational Quadric::evaluate(const HPoint3& p) const { return evaluate_quadric(coeffs_, p.coords()); }

QuadricCoeffs Quadric::monomial_coeffs() const {
  QuadricCoeffs m = coeffs_;
  for (std::size_t s = 0; s < 10; ++s)
    if (is_mixed(s)) m[s] *= Rational(2);
  return m;
}

Quadric Quadric::from_monomials(const QuadricCoeffs& monomial) {
  QuadricCoeffs c = monomial;
  for (std::size_t s = 0; s < 10; ++s)
    if (is_mixed(s)) c[s] /= Rational(2);
  return Quadric(c);
}

std::string VertexSplit::label() const {
  std::string s;
  for (int v : first) s += vertex_label(v);
  s += '|';
  for (int v : second) s += vertex_label(v);
  return s;
}

const std::array<VertexSplit, 10>& enumerate_pairs() {
  static const std::array<VertexSplit, 10> splits = [] {
    std::array<VertexSplit, 10> out;
    std::size_t n = 0;
    for (int b = 1; b < 6; ++b)
      for (int c = b + 1; c < 6; ++c) {
        VertexSplit sp{{0, b, c}, {}};
        std::size_t k = 0;
        for (int v = 1; v < 6; ++v)
          if (v != b && v != c) sp.second[k++] = v;
        out[n++] = sp;
      }
    return out;
  }();
  return splits;
}

PairChoice PairChoice::default_covering() { return {{3, 7, 8, 2}}; }

PairChoice PairChoice::from_index(int k) {
  const auto& all = all_choices();
  if (k < 0 || k >= static_cast<int>(all.size()))
    fail(ErrorCode::InvalidArgument, "pairing index must be in [0, 209]");
  return all[k];
}

std::string PairChoice::label() const {
  std::string s;
  for (std::size_t k = 0; k < 4; ++k) {
    if (k) s += ',';
    s += enumerate_pairs()[splits[k]].label();
  }
  return s;
}

PlanePairQuadric plane_pair(const HPlane3& a, const HPlane3& b) {
  return {a, b, expand_product(a.coords(), b.coords())};
}

std::array<Rational, 4> solve_multipliers4(const std::array<std::array<Rational, 4>, 3>& system) {
  detail::Matrix m;
  for (const auto& row : system) m.emplace_back(row.begin(), row.end());
  const std::vector<Rational> minors = detail::signed_minors(m);
  if (all_zero(minors)) fail(ErrorCode::RankDeficient, "weight system has rank below 3");
  return {minors[0], minors[1], minors[2], minors[3]};
}

QuadricConstruction construct_quadric_through_9(std::span<const HPoint3, 9> pts, PairChoice choice) {
  check_choice(choice);
  if (auto c = attempt(pts, choice)) return std::move(*c);
  for (const PairChoice& alt : all_choices()) {
    if (alt.splits == choice.splits) continue;
    try {
      if (auto c = attempt(pts, alt)) return std::move(*c);
    } catch (const GeometryError& e) {
      if (e.code() != ErrorCode::CoplanarTriple) throw;
    }
  }
  fail(ErrorCode::DegenerateChoice, "no choice of four plane pairs determines a unique quadric");
}

Quadric quadric_through_9(std::span<const HPoint3, 9> pts, PairChoice choice) {
  return construct_quadric_through_9(pts, choice).quadric;
}

Quadric quadric_oracle_det(std::span<const HPoint3, 9> pts) {
  detail::Matrix rows;
  for (const auto& p : pts) {
    const auto& x = p.coords();
    std::vector<Rational> row;
    for (const auto& slot : kSlots) row.push_back(x[slot[0]] * x[slot[1]]);
    rows.push_back(std::move(row));
  }
  const std::vector<Rational> monomial = detail::signed_minors(rows);
  if (all_zero(monomial)) fail(ErrorCode::DegenerateConfiguration, "all ten 9x9 cofactors vanish");
  QuadricCoeffs m;
  std::copy(monomial.begin(), monomial.end(), m.begin());
  return Quadric::from_monomials(m);
}

bool choice_invariance_check(std::span<const HPoint3, 9> pts, PairChoice a, PairChoice b) {
  return quadric_through_9(pts, a) == quadric_through_9(pts, b);
}

bool choice_is_valid(std::span<const HPoint3, 9> pts, PairChoice choice) {
  check_choice(choice);
  try {
    return attempt(pts, choice).has_value();
  } catch (const GeometryError& e) {
    if (e.code() == ErrorCode::CoplanarTriple) return false;
    throw;
  }
}

}  // namespace conicpen
