// Acceptance runner: one PASS/FAIL line per criterion.
//
//   acceptance                 run all criteria
//   acceptance --criterion N   run criterion N only
//
// Exit status is 0 when every selected criterion passes.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "conicpen/cone_pair.hpp"
#include "conicpen/cone_solver.hpp"
#include "conicpen/conic_pencil.hpp"
#include "conicpen/error.hpp"
#include "conicpen/kinematics.hpp"
#include "conicpen/quadric_pencil.hpp"
#include "fixtures.hpp"

using namespace conicpen;

namespace {

// Pinned tolerances and time limits.
constexpr double kConicMs = 10;
constexpr int kOracleTrials = 1000;
constexpr double kOracleMs = 10000;
constexpr double kFlopLow = 0.01, kFlopHigh = 0.05;
constexpr double kQuadricMs = 50;
constexpr int kChoiceTrials = 50;
constexpr double kChoiceMs = 5000;
constexpr double kImageTol = 5e-4;
constexpr double kRigidTol = 1e-9;
constexpr double kDisplacementMs = 10;
constexpr double kRootTol = 1e-3;
constexpr double kConeResidualTol = 1e-8;
constexpr double kSolverMs = 60000;
constexpr double kUvpTol = 1e-4;
constexpr double kUvpMs = 1000;
constexpr double kTranslationTol = 1e-3;
constexpr double kFactor = 0.9449, kFactorTol = 1e-3;
constexpr double kConePairMs = 10;
constexpr double kMirrorMs = 1000;
constexpr double kJacobianTol = 1e-6;
constexpr double kRoundTripTol = 1e-8;

struct Outcome {
  bool pass = true;
  std::string detail;
  std::vector<std::string> info;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

void require_time(Outcome& o, double ms, double limit) {
  o.info.push_back("runtime " + fmt("%.3f", ms) + " ms (limit " + fmt("%.0f", limit) + " ms)");
  o.require(ms < limit, "runtime " + fmt("%.3f", ms) + " ms over limit");
}

double max_coord_error(Point3 a, Point3 b) {
  return std::max({std::abs(a.x - b.x), std::abs(a.y - b.y), std::abs(a.z - b.z)});
}

bool any_three_collinear(std::span<const HPoint2, 5> pts) {
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = i + 1; j < 5; ++j)
      for (std::size_t k = j + 1; k < 5; ++k)
        if (collinear(pts[i], pts[j], pts[k])) return true;
  return false;
}

const SolutionSet& reference_solutions() {
  static const SolutionSet set = solve(build_constraints(fixtures::pentagon()));
  return set;
}

Outcome conic_fixture() {
  Outcome o;
  const auto pts = fixtures::conic_points();
  Stopwatch sw;
  const ConicConstruction c = construct_conic_through_5(pts);
  const double ms = sw.ms();
  o.require(c.conic == Conic::from_monomials(fixtures::conic_reference_monomials()), "coefficients differ");
  o.require(c.multipliers.lambda == Rational(494) && c.multipliers.mu == Rational(1064), "multipliers differ");
  o.require(proportional(c.conic.monomial_coeffs(), fixtures::conic_reference_monomials()), "not proportional");
  require_time(o, ms, kConicMs);
  return o;
}

Outcome conic_oracle() {
  Outcome o;
  fixtures::RationalGen gen(2025);
  int compared = 0, mismatched = 0;
  Stopwatch sw;
  while (compared < kOracleTrials) {
    std::array<HPoint2, 5> pts{gen.point2(), gen.point2(), gen.point2(), gen.point2(), gen.point2()};
    if (any_three_collinear(pts)) continue;
    ++compared;
    if (!(conic_through_5(pts) == conic_oracle_det(pts))) ++mismatched;
  }
  const double ms = sw.ms();
  o.info.push_back(std::to_string(compared) + " point sets, " + std::to_string(mismatched) + " mismatches");
  o.require(mismatched == 0, std::to_string(mismatched) + " mismatches");
  require_time(o, ms, kOracleMs);
  return o;
}

Outcome flop_ratio() {
  Outcome o;
  const FlopReport r = flop_report(fixtures::conic_points());
  o.info.push_back("pencil " + std::to_string(r.pencil.total()) + " (adds " + std::to_string(r.pencil.adds) +
                   ", muls " + std::to_string(r.pencil.muls) + ", divs " + std::to_string(r.pencil.divs) + ")");
  o.info.push_back("determinant " + std::to_string(r.determinant.total()) + ", ratio " + fmt("%.4f", r.ratio));
  o.require(r.ratio >= kFlopLow && r.ratio <= kFlopHigh, "ratio " + fmt("%.4f", r.ratio) + " outside band");
  return o;
}

Outcome quadric_fixture() {
  Outcome o;
  const auto pts = fixtures::quadric_points();
  Stopwatch sw;
  const QuadricConstruction c = construct_quadric_through_9(pts, PairChoice::default_covering());
  const double ms = sw.ms();
  o.require(c.system == fixtures::quadric_system_rows(), "system rows differ");
  o.require(c.multipliers == fixtures::quadric_weights(), "multipliers differ");
  o.require(proportional(c.quadric.monomial_coeffs(), fixtures::quadric_reference_monomials()), "not proportional");
  require_time(o, ms, kQuadricMs);
  return o;
}

Outcome pairing_invariance() {
  Outcome o;
  const auto pts = fixtures::quadric_points();
  const Quadric reference = quadric_through_9(pts);
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<int> pick(0, 209);
  int tested = 0, differing = 0;
  Stopwatch sw;
  while (tested < kChoiceTrials) {
    const PairChoice choice = PairChoice::from_index(pick(rng));
    if (!choice_is_valid(pts, choice)) continue;
    ++tested;
    if (!(construct_quadric_through_9(pts, choice).quadric == reference)) ++differing;
  }
  const double ms = sw.ms();
  o.info.push_back(std::to_string(tested) + " valid choices, " + std::to_string(differing) + " differ");
  o.require(differing == 0, std::to_string(differing) + " choices differ");
  require_time(o, ms, kChoiceMs);
  return o;
}

Outcome displacement_fixtures() {
  Outcome o;
  const auto pent = fixtures::pentagon();
  const std::array<std::pair<DualQuaternion, std::array<Point3, 5>>, 2> cases{
      {{fixtures::dq_first(), fixtures::images_first()}, {fixtures::dq_second(), fixtures::images_second()}}};
  Stopwatch sw;
  std::array<double, 2> err{0, 0};
  double rigid = 0;
  for (std::size_t k = 0; k < 2; ++k) {
    std::array<Point3, 5> img;
    for (std::size_t i = 0; i < 5; ++i) {
      img[i] = dq_act(cases[k].first, pent[i]);
      err[k] = std::max(err[k], max_coord_error(img[i], cases[k].second[i]));
    }
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t j = i + 1; j < 5; ++j) {
        const double d0 = distance(pent[i], pent[j]);
        rigid = std::max(rigid, std::abs(distance(img[i], img[j]) - d0) / d0);
      }
  }
  const double ms = sw.ms();
  o.info.push_back("max image error " + fmt("%.3e", err[0]) + " and " + fmt("%.3e", err[1]) + " (tol " +
                   fmt("%.0e", kImageTol) + ")");
  o.info.push_back("max relative distance change " + fmt("%.3e", rigid));
  // Diagnostic only: the same images from the full-precision placements.
  for (std::size_t k = 0; k < 2; ++k)
    for (const Solution& s : reference_solutions().solutions) {
      if (std::abs(s.q.real().w - cases[k].first.real().w) > kRootTol) continue;
      double e = 0;
      for (std::size_t i = 0; i < 5; ++i) e = std::max(e, max_coord_error(dq_act(s.q, pent[i]), cases[k].second[i]));
      o.info.push_back("full-precision placement " + std::to_string(k + 1) + " image error " + fmt("%.3e", e));
    }
  for (std::size_t k = 0; k < 2; ++k)
    o.require(err[k] < kImageTol, "displacement " + std::to_string(k + 1) + " image error " + fmt("%.3e", err[k]));
  o.require(rigid < kRigidTol, "rigidity " + fmt("%.3e", rigid));
  require_time(o, ms, kDisplacementMs);
  return o;
}

Outcome cone_placement() {
  Outcome o;
  Stopwatch sw;
  const SolutionSet& set = reference_solutions();
  const double ms = sw.ms();
  o.info.push_back("starts " + std::to_string(set.starts_used) + ", classes " + std::to_string(set.solutions.size()));
  o.require(set.solutions.size() == 8, std::to_string(set.solutions.size()) + " classes");
  o.require(set.complete, "class count not stable");
  std::vector<double> got, want = fixtures::root_table();
  for (const Solution& s : set.solutions) got.push_back(s.q.real().w);
  std::sort(got.begin(), got.end());
  std::sort(want.begin(), want.end());
  if (got.size() == want.size()) {
    double worst = 0;
    for (std::size_t i = 0; i < got.size(); ++i) worst = std::max(worst, std::abs(got[i] - want[i]));
    o.info.push_back("max x0 deviation " + fmt("%.3e", worst));
    o.require(worst < kRootTol, "x0 deviation " + fmt("%.3e", worst));
  }
  const auto pent = fixtures::pentagon();
  double cone = 0;
  for (const Solution& s : set.solutions) {
    const StudyVec v = s.q.study();
    o.require(v == sign_canonical(v), "solution not sign canonical");
    const Point3 a = dq_act(s.q, pent[0]);
    cone = std::max({cone, std::abs(a.y), std::abs(a.x - a.z)});
    for (std::size_t i = 1; i < 5; ++i) {
      const Point3 p = dq_act(s.q, pent[i]);
      cone = std::max(cone, std::abs(p.x * p.x + p.y * p.y - p.z * p.z));
    }
  }
  o.info.push_back("max cone/generator residual " + fmt("%.3e", cone));
  o.require(cone < kConeResidualTol, "cone residual " + fmt("%.3e", cone));
  require_time(o, ms, kSolverMs);
  return o;
}

Outcome uvp_verification() {
  Outcome o;
  const SolutionSet& set = reference_solutions();
  Stopwatch sw;
  int on_f8a = 0, on_f8b = 0;
  double worst = 0, alt_best = 1;
  for (const Solution& s : set.solutions) {
    const double x0 = s.q.real().w;
    const double a = uvp_scaled_residual(x0, UvpFactor::F8a);
    const double b = uvp_scaled_residual(x0, UvpFactor::F8b);
    worst = std::max(worst, std::min(a, b));
    if (a < kUvpTol) ++on_f8a;
    if (b < kUvpTol) {
      ++on_f8b;
      alt_best = std::min(alt_best, uvp_scaled_residual(x0, UvpFactor::F8bAltLead));
    }
  }
  const PositivityReport f16 = f16_positivity();
  const PositivityReport f16_alt = f16_positivity({}, UvpFactor::F16AltLead);
  const double ms = sw.ms();
  o.require(set.solutions.size() == 8, "need eight solutions");
  o.info.push_back(std::to_string(on_f8a) + " roots on F8a, " + std::to_string(on_f8b) + " on F8b, worst scaled " +
                   fmt("%.3e", worst));
  o.require(worst < kUvpTol, "scaled residual " + fmt("%.3e", worst));
  o.require(on_f8a == 4 && on_f8b == 4, "roots not split four and four");
  o.info.push_back("alternative F8b leading coefficient: best scaled residual " + fmt("%.3e", alt_best));
  o.require(on_f8b > 0 && alt_best >= kUvpTol, "alternative F8b leading coefficient not rejected");
  o.info.push_back("F16 min on [-2,2] " + fmt("%.6g", f16.min_value) + " at " + fmt("%.4f", f16.argmin));
  o.require(f16.positive_on_interval, "F16 not positive on [-2,2]");
  o.info.push_back(std::string("alternative F16 leading coefficient positive on [-2,2]: ") +
                   (f16_alt.positive_on_interval ? "yes" : "no") + ", min " + fmt("%.6g", f16_alt.min_value));
  double table_worst = 0;
  for (double x0 : fixtures::root_table())
    table_worst = std::max(table_worst, std::min(uvp_scaled_residual(x0, UvpFactor::F8a),
                                                 uvp_scaled_residual(x0, UvpFactor::F8b)));
  o.info.push_back("four-digit table values: worst scaled residual " + fmt("%.3e", table_worst));
  require_time(o, ms, kUvpMs);
  return o;
}

Outcome cone_pair() {
  Outcome o;
  const auto img = fixtures::images_first();
  Stopwatch sw;
  const std::vector<Point3> ts = recover_translation(img[0], img[1], img[2]);
  const std::span<const Point3> all(img);
  const Point3 t = ts.size() == 2 ? ts[1] : Point3{};
  const SharedConicReport rep = shared_conic_check(all, t);
  const double ms = sw.ms();
  o.require(ts.size() == 2, std::to_string(ts.size()) + " translations");
  if (ts.size() != 2) return o;
  o.require(ts[0] == Point3{0, 0, 0}, "first translation not zero");
  const double dt = max_coord_error(t, fixtures::reference_translation());
  o.info.push_back("t = (" + fmt("%.4f", t.x) + ", " + fmt("%.4f", t.y) + ", " + fmt("%.4f", t.z) + "), deviation " +
                   fmt("%.3e", dt));
  o.require(dt < kTranslationTol, "translation deviation " + fmt("%.3e", dt));
  const ConeModel k = translated_cone(t);
  const auto ref = fixtures::reference_translated_cone_linear();
  double dk = std::abs(k.constant() - ref[0]);
  for (std::size_t i = 0; i < 3; ++i) dk = std::max(dk, std::abs(k.linear()[i] - ref[i + 1]));
  o.info.push_back("translated cone deviation " + fmt("%.3e", dk));
  o.require(dk < kTranslationTol, "translated cone deviation " + fmt("%.3e", dk));
  o.info.push_back("plane factor " + fmt("%.5f", rep.factor) + ", spread " + fmt("%.3e", rep.factor_spread));
  o.require(std::abs(rep.factor - kFactor) <= kFactorTol, "factor " + fmt("%.5f", rep.factor));
  o.require(rep.factor_spread < kFactorTol, "planes not proportional");
  require_time(o, ms, kConePairMs);
  return o;
}

Outcome mirror_pairing() {
  Outcome o;
  const SolutionSet& set = reference_solutions();
  const auto pent = fixtures::pentagon();
  Stopwatch sw;
  const MirrorPairing pairing = pair_mirrored_solutions(set, pent);
  const double ms = sw.ms();
  o.require(pairing.pairs.size() == 4, std::to_string(pairing.pairs.size()) + " pairs");
  std::vector<int> seen(set.solutions.size(), 0);
  std::string listing;
  for (auto [i, j] : pairing.pairs) {
    ++seen[i];
    ++seen[j];
    o.require(compare_solutions(set.solutions[i].q, set.solutions[j].q, pent).relation ==
                  SolutionRelation::MirroredPair,
              "pair not mirrored");
    listing += " (" + fmt("%.4f", set.solutions[i].q.real().w) + ", " + fmt("%.4f", set.solutions[j].q.real().w) + ")";
  }
  o.info.push_back("pairs by x0:" + listing);
  o.require(std::all_of(seen.begin(), seen.end(), [](int c) { return c == 1; }), "solutions not used exactly once");

  auto index_of = [&](double x0) {
    for (std::size_t i = 0; i < set.solutions.size(); ++i)
      if (std::abs(set.solutions[i].q.real().w - x0) < kRootTol) return i;
    return set.solutions.size();
  };
  const std::size_t a = index_of(fixtures::dq_first().real().w), b = index_of(fixtures::dq_second().real().w);
  const std::pair<std::size_t, std::size_t> want{std::min(a, b), std::max(a, b)};
  o.require(std::find(pairing.pairs.begin(), pairing.pairs.end(), want) != pairing.pairs.end(),
            "reference displacements are not paired");
  o.require(compare_solutions(fixtures::dq_first(), fixtures::dq_second(), pent, 2e-3).relation ==
                SolutionRelation::MirroredPair,
            "reference displacements do not compare as mirrored");
  require_time(o, ms, kMirrorMs);
  return o;
}

Outcome property_suites() {
  Outcome o;
  fixtures::RationalGen gen(77);

  int duality_bad = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const HPoint2 a = gen.point2(), b = gen.point2(), c = gen.point2();
    if (a.same_as(b) || a.same_as(c) || collinear(a, b, c)) continue;
    const HLine2 ab = join_points2(a, b), ac = join_points2(a, c);
    if (!incidence(a, ab).is_zero() || !incidence(b, ab).is_zero()) ++duality_bad;
    if (!meet_lines2(ab, ac).same_as(a)) ++duality_bad;
    // Same construction with the roles of points and lines swapped.
    const HLine2 l(a.coords()), m(b.coords()), n(c.coords());
    const HPoint2 lm = meet_lines2(l, m), ln = meet_lines2(l, n);
    if (!join_points2(lm, ln).same_as(l)) ++duality_bad;
    if (!proportional(lm.coords(), ab.coords())) ++duality_bad;
  }
  o.info.push_back("join/meet duality violations " + std::to_string(duality_bad));
  o.require(duality_bad == 0, "join/meet duality");

  int incidence_bad = 0;
  for (int trial = 0; trial < 100; ++trial) {
    std::array<HPoint2, 5> p2{gen.point2(), gen.point2(), gen.point2(), gen.point2(), gen.point2()};
    if (!any_three_collinear(p2)) {
      const Conic c = conic_through_5(p2);
      for (const auto& p : p2) incidence_bad += !c.evaluate(p).is_zero();
    }
    std::array<HPoint3, 9> p3{gen.point3(), gen.point3(), gen.point3(), gen.point3(), gen.point3(),
                              gen.point3(), gen.point3(), gen.point3(), gen.point3()};
    try {
      const Quadric q = quadric_through_9(p3);
      for (const auto& p : p3) incidence_bad += !q.evaluate(p).is_zero();
    } catch (const GeometryError&) {
    }
  }
  o.info.push_back("nonzero incidence residuals " + std::to_string(incidence_bad));
  o.require(incidence_bad == 0, "incidence residuals");

  const ConstraintSystem sys = build_constraints(fixtures::pentagon());
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(-1, 1);
  int sign_bad = 0;
  double jac_worst = 0;
  for (int trial = 0; trial < 200; ++trial) {
    StudyVec v, neg;
    for (auto& e : v) e = u(rng);
    for (int i = 0; i < 8; ++i) neg[i] = -v[i];
    sign_bad += sys.residuals(v) != sys.residuals(neg);
    const Jacobian8 J = sys.jacobian(v);
    double worst = 0, scale = 1;
    for (int j = 0; j < 8; ++j) {
      const double h = 1e-5;
      StudyVec vp = v, vm = v;
      vp[j] += h;
      vm[j] -= h;
      const StudyVec rp = sys.residuals(vp), rm = sys.residuals(vm);
      for (int i = 0; i < 8; ++i) {
        worst = std::max(worst, std::abs((rp[i] - rm[i]) / (2 * h) - J[i][j]));
        scale = std::max(scale, std::abs(J[i][j]));
      }
    }
    jac_worst = std::max(jac_worst, worst / scale);
  }
  o.info.push_back("sign symmetry violations " + std::to_string(sign_bad) + ", worst Jacobian relative error " +
                   fmt("%.3e", jac_worst));
  o.require(sign_bad == 0, "sign symmetry");
  o.require(jac_worst < kJacobianTol, "Jacobian error " + fmt("%.3e", jac_worst));

  std::mt19937_64 trng(4);
  std::normal_distribution<double> n(0, 1);
  std::uniform_real_distribution<double> angle(0, 2 * M_PI), radius(0.2, 3);
  int tested = 0;
  double trip_worst = 0;
  for (int trial = 0; trial < 300; ++trial) {
    Point3 t{n(trng), n(trng), n(trng)};
    t = (radius(trng) / norm(t)) * t;
    const double sigma = n(trng) > 0 ? 1 : -1;
    const Plane3f pl = intersection_plane(t);
    std::array<Point3, 3> p;
    bool usable = true;
    for (auto& q : p) {
      const double th = angle(trng);
      const Point3 dir{std::cos(th), std::sin(th), sigma};
      q = (-pl.c[0] / (pl.c[1] * dir.x + pl.c[2] * dir.y + pl.c[3] * dir.z)) * dir;
      usable = usable && norm(q) < 50;
    }
    if (!usable) continue;
    std::vector<Point3> ts;
    try {
      ts = recover_translation(p[0], p[1], p[2], 1e-8);
    } catch (const GeometryError&) {
      continue;
    }
    ++tested;
    if (ts.size() != 2) {
      trip_worst = INFINITY;
      continue;
    }
    trip_worst = std::max(trip_worst, distance(ts[1], t) / std::max(1.0, norm(t)));
  }
  o.info.push_back(std::to_string(tested) + " round trips, worst relative error " + fmt("%.3e", trip_worst));
  o.require(tested > 250, "too few usable round trips");
  o.require(trip_worst < kRoundTripTol, "round trip error " + fmt("%.3e", trip_worst));
  return o;
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> run;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all{
      {1, "conic fixture", conic_fixture},
      {2, "conic oracle equivalence", conic_oracle},
      {3, "operation count ratio", flop_ratio},
      {4, "quadric fixture", quadric_fixture},
      {5, "pairing invariance", pairing_invariance},
      {6, "displacement fixtures", displacement_fixtures},
      {7, "cone placement", cone_placement},
      {8, "univariate factor verification", uvp_verification},
      {9, "cone pair", cone_pair},
      {10, "mirror pairing", mirror_pairing},
      {11, "property suites", property_suites},
  };
  return all;
}

bool run_one(const Criterion& c) {
  Outcome o;
  try {
    o = c.run();
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail = std::string("exception: ") + e.what();
  }
  for (const auto& line : o.info) std::printf("  [%d] %s\n", c.id, line.c_str());
  std::printf("criterion %d %s: %s%s%s\n", c.id, c.name, o.pass ? "PASS" : "FAIL", o.detail.empty() ? "" : " - ",
              o.detail.c_str());
  std::fflush(stdout);
  return o.pass;
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::fprintf(stderr, "usage: %s [--criterion N]\n", argv[0]);
      return 2;
    }
  }
  bool ok = true;
  bool matched = false;
  for (const Criterion& c : criteria()) {
    if (only != 0 && c.id != only) continue;
    matched = true;
    ok = run_one(c) && ok;
  }
  if (!matched) {
    std::fprintf(stderr, "no criterion %d\n", only);
    return 2;
  }
  return ok ? 0 : 1;
}
