#include "conicpen/pipelines.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

#include <json.hpp>

#include "conicpen/conic_pencil.hpp"
#include "conicpen/error.hpp"
#include "conicpen/plot.hpp"
#include "conicpen/point_document.hpp"
#include "conicpen/quadric_pencil.hpp"
#include "reference_data.hpp"

namespace conicpen {

namespace {

using ojson = nlohmann::ordered_json;

constexpr const char* kConicMonomialNames[6] = {"x0^2", "x0x1", "x0x2", "x1^2", "x1x2", "x2^2"};
constexpr const char* kQuadricMonomialNames[10] = {"x0^2", "x0x1", "x0x2", "x0x3", "x1^2",
                                                   "x1x2", "x1x3", "x2^2", "x2x3", "x3^2"};

// Doubles are written with 17 significant digits, so they read back exactly.
bool same_double(double a, double b) { return a == b || std::abs(a - b) <= 1e-15 * std::max(1.0, std::abs(a)); }

template <class Range>
ojson rational_list(const Range& values) {
  ojson out = ojson::array();
  for (const Rational& v : values) out.push_back(v.str());
  return out;
}

ojson point_json(Point3 p) { return ojson::array({p.x, p.y, p.z}); }

Point3 read_point(const ojson& j) { return {j.at(0).get<double>(), j.at(1).get<double>(), j.at(2).get<double>()}; }

// Echo of the parsed input, itself a valid JSON point document.
ojson input_echo(const PointDocument& doc) {
  ojson pts = ojson::array();
  for (const auto& p : doc.points) pts.push_back({{"label", p.label}, {"coords", rational_list(p.coords)}});
  return {{"dimension", doc.dimension}, {"homogeneous", doc.homogeneous}, {"points", pts}};
}

PointDocument reread_input(const ojson& result) { return parse_point_document(result.at("input").dump()); }

ojson error_document(const std::string& command, Status status, const std::string& code, const std::string& message) {
  return {{"command", command}, {"status", status_name(status)}, {"error", {{"code", code}, {"message", message}}}};
}

template <class Body>
PipelineOutput guarded(const std::string& command, Body&& body) {
  PipelineOutput out;
  try {
    body(out);
  } catch (const GeometryError& e) {
    out.status = is_geometric(e.code()) ? Status::Degenerate : Status::InputError;
    out.message = e.what();
    out.json = error_document(command, out.status, error_code_name(e.code()), e.what()).dump(2) + "\n";
    out.artifact.clear();
    out.artifact_kind.clear();
  } catch (const std::exception& e) {
    out.status = Status::Internal;
    out.message = e.what();
    out.json = error_document(command, out.status, "Internal", e.what()).dump(2) + "\n";
    out.artifact.clear();
    out.artifact_kind.clear();
  }
  return out;
}

// Self-verification before a result is released.
void finalize(PipelineOutput& out, ojson& doc) {
  doc["status"] = status_name(out.status);
  out.json = doc.dump(2) + "\n";
  const VerifyReport rep = verify_result_document(out.json);
  if (!rep.ok) {
    std::string msg = "result failed re-verification";
    for (const auto& p : rep.problems) msg += "; " + p;
    throw std::runtime_error(msg);
  }
}

ojson flop_json(const FlopCounter& f) {
  return {{"adds", f.adds}, {"muls", f.muls}, {"divs", f.divs}, {"total", f.total()}};
}

template <std::size_t N>
std::array<double, N> to_doubles(const RatVec<N>& v) {
  std::array<double, N> out;
  for (std::size_t i = 0; i < N; ++i) out[i] = v[i].to_double();
  return out;
}

template <std::size_t N>
RatVec<N> read_rationals(const ojson& arr) {
  if (!arr.is_array() || arr.size() != N) fail(ErrorCode::ParseError, "coefficient list has the wrong length");
  RatVec<N> v;
  for (std::size_t i = 0; i < N; ++i) v[i] = Rational::parse(arr[i].get<std::string>());
  return v;
}

// Sum of m_k x_i x_j over i <= j in lexicographic order.
template <std::size_t M, std::size_t N>
Rational monomial_value(const RatVec<M>& m, const RatVec<N>& x) {
  static_assert(M == N * (N + 1) / 2);
  Rational s;
  std::size_t k = 0;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = i; j < N; ++j) s += m[k++] * x[i] * x[j];
  return s;
}

// ---------------------------------------------------------------- conic5

void conic5_body(std::string_view text, const ConicOptions& opts, PipelineOutput& out) {
  const PointDocument doc = parse_point_document(text);
  const auto v = doc.points2(5);
  const std::array<HPoint2, 5> pts{v[0], v[1], v[2], v[3], v[4]};
  const ConicConstruction c = construct_conic_through_5(pts);
  const FlopReport fr = flop_report(pts);
  const RatVec<6> monomial = canonical(c.conic.monomial_coeffs());
  const auto labels = doc.labels();

  ojson result;
  result["command"] = "conic5";
  result["options"] = {{"oracle", opts.oracle}, {"plot", opts.plot}};
  result["input"] = input_echo(doc);
  ojson roles = ojson::array();
  for (std::size_t r : c.roles) roles.push_back(labels[r]);
  result["conic"] = {{"monomials", kConicMonomialNames},
                     {"coefficients", rational_list(monomial)},
                     {"matrix_entries", rational_list(c.conic.coeffs())},
                     {"class", conic_class_name(classify_conic(c.conic))}};
  result["pencil"] = {{"roles", roles},
                      {"lines", {{"p", rational_list(c.lines[0])},
                                 {"q", rational_list(c.lines[1])},
                                 {"r", rational_list(c.lines[2])},
                                 {"s", rational_list(c.lines[3])}}},
                      {"multipliers", {{"lambda", c.multipliers.lambda.str()}, {"mu", c.multipliers.mu.str()}}}};
  if (opts.oracle) {
    const Conic o = conic_oracle_det(pts);
    result["oracle"] = {{"coefficients", rational_list(canonical(o.monomial_coeffs()))}, {"agrees", o == c.conic}};
    if (!(o == c.conic)) fail(ErrorCode::DegenerateConfiguration, "pencil and determinant conics disagree");
  }
  ojson residuals = ojson::array();
  for (std::size_t i = 0; i < 5; ++i)
    residuals.push_back({{"label", labels[i]}, {"value", monomial_value(monomial, pts[i].coords()).str()}});
  result["residuals"] = residuals;
  result["flops"] = {{"pencil", flop_json(fr.pencil)},
                     {"determinant", flop_json(fr.determinant)},
                     {"line_stage", fr.line_stage},
                     {"multiplier_stage", fr.multiplier_stage},
                     {"expansion_stage", fr.expansion_stage},
                     {"ratio", fr.ratio}};
  finalize(out, result);

  if (opts.plot) {
    std::vector<Marker2> markers;
    for (std::size_t i = 0; i < 5; ++i) {
      const auto& h = pts[i].coords();
      if (h[0].is_zero()) continue;
      markers.push_back({labels[i], (h[1] / h[0]).to_double(), (h[2] / h[0]).to_double()});
    }
    out.artifact = conic_svg(to_doubles(monomial), markers, opts.plot_samples);
    out.artifact_kind = "svg";
  }
}


// -------------------------------------------------------------- quadric9

void quadric9_body(std::string_view text, const QuadricOptions& opts, PipelineOutput& out) {
  const PointDocument doc = parse_point_document(text);
  const auto v = doc.points3(9);
  std::array<int, 9> order;
  std::iota(order.begin(), order.end(), 0);
  if (opts.vertex_order) {
    order = *opts.vertex_order;
    std::set<int> seen(order.begin(), order.end());
    if (seen.size() != 9 || *seen.begin() != 0 || *seen.rbegin() != 8)
      fail(ErrorCode::InvalidArgument, "vertex order must be a permutation of 0..8");
  }
  std::array<HPoint3, 9> pts{v[order[0]], v[order[1]], v[order[2]], v[order[3]], v[order[4]],
                             v[order[5]], v[order[6]], v[order[7]], v[order[8]]};
  const PairChoice requested = opts.pairing < 0 ? PairChoice::default_covering() : PairChoice::from_index(opts.pairing);
  const QuadricConstruction c = construct_quadric_through_9(pts, requested);
  const RatVec<10> monomial = canonical(c.quadric.monomial_coeffs());
  const auto labels = doc.labels();

  ojson result;
  result["command"] = "quadric9";
  result["options"] = {{"oracle", opts.oracle},
                       {"pairing", opts.pairing},
                       {"vertex_order", order},
                       {"mesh", opts.mesh},
                       {"resolution", opts.resolution}};
  result["input"] = input_echo(doc);
  result["quadric"] = {{"monomials", kQuadricMonomialNames},
                       {"coefficients", rational_list(monomial)},
                       {"matrix_entries", rational_list(c.quadric.coeffs())}};
  ojson vertices = ojson::array(), extra = ojson::array();
  for (std::size_t i = 0; i < 6; ++i) vertices.push_back(labels[order[i]]);
  for (std::size_t i = 6; i < 9; ++i) extra.push_back(labels[order[i]]);
  ojson pairs = ojson::array();
  for (std::size_t k = 0; k < 4; ++k)
    pairs.push_back({{"split", enumerate_pairs()[c.choice.splits[k]].label()},
                     {"first", rational_list(c.pairs[k].first.coords())},
                     {"second", rational_list(c.pairs[k].second.coords())}});
  ojson system = ojson::array();
  for (const auto& row : c.system) system.push_back(rational_list(row));
  result["pencil"] = {{"vertices", vertices},
                      {"substitution_points", extra},
                      {"requested_choice", requested.label()},
                      {"choice", c.choice.label()},
                      {"plane_pairs", pairs},
                      {"system", system},
                      {"multipliers", rational_list(c.multipliers)}};
  if (opts.oracle) {
    const Quadric o = quadric_oracle_det(pts);
    result["oracle"] = {{"coefficients", rational_list(canonical(o.monomial_coeffs()))}, {"agrees", o == c.quadric}};
    if (!(o == c.quadric)) fail(ErrorCode::DegenerateConfiguration, "pencil and determinant quadrics disagree");
  }
  ojson residuals = ojson::array();
  for (std::size_t i = 0; i < 9; ++i)
    residuals.push_back({{"label", labels[i]}, {"value", monomial_value(monomial, v[i].coords()).str()}});
  result["residuals"] = residuals;
  finalize(out, result);

  if (opts.mesh) {
    std::vector<Marker3> markers;
    for (std::size_t i = 0; i < 9; ++i) {
      const auto& h = v[i].coords();
      if (h[0].is_zero()) continue;
      markers.push_back({labels[i], {(h[1] / h[0]).to_double(), (h[2] / h[0]).to_double(), (h[3] / h[0]).to_double()}});
    }
    out.artifact = quadric_obj(to_doubles(monomial), markers, opts.resolution);
    out.artifact_kind = "obj";
  }
}

// ------------------------------------------------------------ place-cone

bool is_reference_pentagon(const std::array<Point3, 5>& p) {
  for (std::size_t i = 0; i < 5; ++i)
    if (!(p[i] == reference::kPentagon[i])) return false;
  return true;
}

void place_cone_body(std::string_view text, const PlaceConeOptions& opts, PipelineOutput& out) {
  const PointDocument doc = parse_point_document(text);
  const auto v = doc.float_points(5, 5);
  const std::array<Point3, 5> pent{v[0], v[1], v[2], v[3], v[4]};
  const ConstraintSystem sys = build_constraints(pent);
  const SolverConfig& cfg = opts.solver;
  const SolutionSet set = solve(sys, cfg);
  const MirrorPairing mp = pair_mirrored_solutions(set, pent);
  const auto labels = doc.labels();
  const bool reference = is_reference_pentagon(pent);

  ojson result;
  result["command"] = "place-cone";
  result["options"] = {{"seed", cfg.seed},
                       {"max_starts", cfg.max_starts},
                       {"tol_residual", cfg.tol_residual},
                       {"tol_dedup", cfg.tol_dedup},
                       {"early_stop_window", cfg.early_stop_window},
                       {"y_radius", cfg.y_radius},
                       {"max_iterations", cfg.max_iterations}};
  result["input"] = input_echo(doc);
  result["solver"] = {{"complete", set.complete},
                      {"starts_used", set.starts_used},
                      {"converged_starts", set.converged_starts},
                      {"classes", set.solutions.size()}};
  ojson sols = ojson::array();
  bool roots_matched = true;
  for (std::size_t i = 0; i < set.solutions.size(); ++i) {
    const Solution& s = set.solutions[i];
    const StudyVec study = s.q.study();
    ojson images = ojson::array();
    for (std::size_t k = 0; k < 5; ++k) images.push_back({{"label", labels[k]}, {"point", point_json(dq_act(s.q, pent[k]))}});
    ojson entry = {{"index", i},
                   {"x0", study[0]},
                   {"study", study},
                   {"constraints", sys.residuals(study)},
                   {"max_residual", s.residual},
                   {"images", images},
                   {"cone_translation", point_json(mp.translations[i])}};
    if (reference) {
      const double ra = uvp_scaled_residual(study[0], UvpFactor::F8a);
      const double rb = uvp_scaled_residual(study[0], UvpFactor::F8b);
      entry["uvp"] = {{"factor", uvp_factor_name(ra <= rb ? UvpFactor::F8a : UvpFactor::F8b)},
                      {"scaled_residual", std::min(ra, rb)},
                      {"F8a", ra},
                      {"F8b", rb}};
      roots_matched = roots_matched && std::min(ra, rb) < 1e-4;
    }
    sols.push_back(entry);
  }
  result["solutions"] = sols;
  if (reference) {
    const PositivityReport pos = f16_positivity();
    result["uvp"] = {{"roots_matched", roots_matched},
                     {"degree16_positive", pos.positive_on_interval && pos.positive_beyond},
                     {"degree16_min", pos.min_value},
                     {"degree16_argmin", pos.argmin}};
  }
  ojson pairs = ojson::array();
  for (auto [i, j] : mp.pairs)
    pairs.push_back({{"first", i}, {"second", j},
                     {"x0", {set.solutions[i].q.real().w, set.solutions[j].q.real().w}}});
  result["mirror_pairs"] = pairs;
  result["unpaired"] = mp.unpaired;
  if (!set.complete) {
    out.status = Status::BudgetExhausted;
    out.message = "solver budget exhausted after " + std::to_string(set.starts_used) +
                  " starts; the solution list may be incomplete";
    result["warning"] = out.message;
  }
  finalize(out, result);
}

// ------------------------------------------------------------- cone-pair

void cone_pair_body(std::string_view text, const ConePairOptions& opts, PipelineOutput& out) {
  const PointDocument doc = parse_point_document(text);
  if (doc.dimension != 3) fail(ErrorCode::InvalidArgument, "cone-pair expects a 3D document");
  const auto pts = doc.float_points(3, 4096);
  const auto ts = recover_translation(pts[0], pts[1], pts[2], opts.cone_tol);
  const Point3 t = ts.back();
  const ConeModel k = translated_cone(t);
  const Plane3f plane = intersection_plane(t);
  const SharedConicReport rep = shared_conic_check(pts, t, opts.conic_tol);
  const auto labels = doc.labels();

  ojson result;
  result["command"] = "cone-pair";
  result["options"] = {{"cone_tol", opts.cone_tol}, {"conic_tol", opts.conic_tol}, {"scene", opts.scene}};
  result["input"] = input_echo(doc);
  ojson translations = ojson::array();
  for (const Point3& s : ts) translations.push_back(point_json(s));
  result["translations"] = translations;
  result["origin_cone"] = {{"constant", 0.0}, {"linear", {0.0, 0.0, 0.0}}, {"quadratic", ConeModel::quadratic()}};
  result["translated_cone"] = {{"apex", point_json(t)},
                               {"constant", k.constant()},
                               {"linear", k.linear()},
                               {"quadratic", ConeModel::quadratic()}};
  result["intersection_plane"] = {{"coefficients", plane.c}, {"normalized", plane.normalized().c}};
  result["image_plane"] = {{"coefficients", rep.fitted.c}, {"factor", rep.factor}, {"factor_spread", rep.factor_spread}};
  ojson residuals = ojson::array();
  for (std::size_t i = 0; i < rep.points.size(); ++i)
    residuals.push_back({{"label", labels[i]},
                         {"origin_cone", rep.points[i].origin_cone},
                         {"translated_cone", rep.points[i].translated_cone},
                         {"plane", rep.points[i].plane}});
  result["residuals"] = residuals;
  result["max_residual"] = rep.max_residual;
  result["within_tol"] = rep.within_tol;
  if (!rep.within_tol) {
    out.status = Status::Degenerate;
    out.message = "points do not lie on one shared conic within " + std::to_string(opts.conic_tol);
    result["warning"] = out.message;
  }
  finalize(out, result);

  if (opts.scene) {
    std::vector<Marker3> markers;
    for (std::size_t i = 0; i < pts.size(); ++i) markers.push_back({labels[i], pts[i]});
    out.artifact = cone_pair_obj(t, markers);
    out.artifact_kind = "obj";
  }
}

// -------------------------------------------------------------- verification

void verify_conic5(const ojson& doc, VerifyReport& rep) {
  const auto pts = reread_input(doc).points2(5);
  const RatVec<6> m = read_rationals<6>(doc.at("conic").at("coefficients"));
  if (all_zero(m)) rep.problems.push_back("conic coefficients are all zero");
  if (!(canonical(m) == m)) rep.problems.push_back("conic coefficients are not canonically scaled");
  const ojson& res = doc.at("residuals");
  for (std::size_t i = 0; i < 5; ++i) {
    const Rational r = monomial_value(m, pts[i].coords());
    ++rep.checks;
    if (res.at(i).at("value").get<std::string>() != r.str())
      rep.problems.push_back("residual of " + res.at(i).at("label").get<std::string>() + " does not reproduce");
    if (!r.is_zero()) rep.problems.push_back("conic misses point " + res.at(i).at("label").get<std::string>());
  }
  if (doc.contains("oracle")) {
    ++rep.checks;
    if (read_rationals<6>(doc["oracle"].at("coefficients")) != m) rep.problems.push_back("oracle coefficients differ");
  }
}

void verify_quadric9(const ojson& doc, VerifyReport& rep) {
  const auto pts = reread_input(doc).points3(9);
  const RatVec<10> m = read_rationals<10>(doc.at("quadric").at("coefficients"));
  if (all_zero(m)) rep.problems.push_back("quadric coefficients are all zero");
  if (!(canonical(m) == m)) rep.problems.push_back("quadric coefficients are not canonically scaled");
  const ojson& res = doc.at("residuals");
  for (std::size_t i = 0; i < 9; ++i) {
    const Rational r = monomial_value(m, pts[i].coords());
    ++rep.checks;
    if (res.at(i).at("value").get<std::string>() != r.str())
      rep.problems.push_back("residual of " + res.at(i).at("label").get<std::string>() + " does not reproduce");
    if (!r.is_zero()) rep.problems.push_back("quadric misses point " + res.at(i).at("label").get<std::string>());
  }
  if (doc.contains("oracle")) {
    ++rep.checks;
    if (read_rationals<10>(doc["oracle"].at("coefficients")) != m) rep.problems.push_back("oracle coefficients differ");
  }
}

void verify_place_cone(const ojson& doc, VerifyReport& rep) {
  const auto v = reread_input(doc).float_points(5, 5);
  const std::array<Point3, 5> pent{v[0], v[1], v[2], v[3], v[4]};
  const ConstraintSystem sys = build_constraints(pent);
  const double tol = doc.at("options").at("tol_residual").get<double>();
  for (const ojson& s : doc.at("solutions")) {
    const std::string tag = "solution " + std::to_string(s.at("index").get<int>());
    const StudyVec study = s.at("study").get<StudyVec>();
    const StudyVec r = sys.residuals(study);
    const StudyVec recorded = s.at("constraints").get<StudyVec>();
    double worst = 0;
    for (int i = 0; i < 8; ++i) {
      ++rep.checks;
      worst = std::max(worst, std::abs(r[i]));
      if (!same_double(r[i], recorded[i])) rep.problems.push_back(tag + ": constraint " + std::to_string(i) + " does not reproduce");
    }
    if (worst > tol) rep.problems.push_back(tag + ": constraint residual above tolerance");
    const DualQuaternion q(study);
    const ojson& images = s.at("images");
    for (std::size_t k = 0; k < 5; ++k) {
      ++rep.checks;
      const Point3 img = dq_act(q, pent[k]);
      const Point3 rec = read_point(images.at(k).at("point"));
      if (!same_double(img.x, rec.x) || !same_double(img.y, rec.y) || !same_double(img.z, rec.z))
        rep.problems.push_back(tag + ": image " + std::to_string(k) + " does not reproduce");
    }
  }
}

void verify_cone_pair(const ojson& doc, VerifyReport& rep) {
  const auto pts = reread_input(doc).float_points(3, 4096);
  const Point3 t = read_point(doc.at("translated_cone").at("apex"));
  const ConeModel k = translated_cone(t);
  const Plane3f plane = intersection_plane(t);
  const ojson& res = doc.at("residuals");
  const double tol = doc.at("options").at("conic_tol").get<double>();
  const bool claimed_ok = doc.at("within_tol").get<bool>();
  double worst = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Point3 p = pts[i];
    const double o = p.x * p.x + p.y * p.y - p.z * p.z, c = k.evaluate(p), pl = plane.evaluate(p);
    rep.checks += 3;
    const ojson& r = res.at(i);
    if (!same_double(o, r.at("origin_cone").get<double>()) || !same_double(c, r.at("translated_cone").get<double>()) ||
        !same_double(pl, r.at("plane").get<double>()))
      rep.problems.push_back("residuals of " + r.at("label").get<std::string>() + " do not reproduce");
    worst = std::max({worst, std::abs(o), std::abs(c), std::abs(pl)});
  }
  if (claimed_ok != (worst <= tol)) rep.problems.push_back("within_tol flag does not match recomputed residuals");
}

// ------------------------------------------------------------- self check

struct Check {
  std::string name;
  bool passed = false;
  ojson detail;
};

template <class Fn>
Check run_check(const std::string& name, Fn&& fn) {
  Check c{name, false, ojson::object()};
  try {
    c.passed = fn(c.detail);
  } catch (const std::exception& e) {
    c.detail["exception"] = e.what();
  }
  return c;
}

double max_image_error(const std::array<double, 8>& dq, const std::array<Point3, 5>& expected) {
  const DualQuaternion q(dq);
  double worst = 0;
  for (std::size_t i = 0; i < 5; ++i) {
    const Point3 d = dq_act(q, reference::kPentagon[i]) - expected[i];
    worst = std::max({worst, std::abs(d.x), std::abs(d.y), std::abs(d.z)});
  }
  return worst;
}

void selfcheck_body(PipelineOutput& out) {
  std::vector<Check> checks;

  checks.push_back(run_check("conic through five points", [](ojson& d) {
    std::vector<HPoint2> v;
    for (auto [x, y] : reference::kConicPoints) v.push_back(affine_point(x, y));
    const std::array<HPoint2, 5> pts{v[0], v[1], v[2], v[3], v[4]};
    const ConicConstruction c = construct_conic_through_5(pts);
    RatVec<6> expected;
    for (std::size_t i = 0; i < 6; ++i) expected[i] = Rational(reference::kConicMonomials[i]);
    d["coefficients"] = rational_list(canonical(c.conic.monomial_coeffs()));
    d["multipliers"] = {c.multipliers.lambda.str(), c.multipliers.mu.str()};
    return proportional(c.conic.monomial_coeffs(), expected) &&
           c.multipliers.lambda == Rational(reference::kConicMultipliers[0]) &&
           c.multipliers.mu == Rational(reference::kConicMultipliers[1]) && conic_oracle_det(pts) == c.conic;
  }));

  checks.push_back(run_check("quadric through nine points", [](ojson& d) {
    std::vector<HPoint3> v;
    for (auto [x, y, z] : reference::kQuadricPoints) v.push_back(affine_point(x, y, z));
    const std::array<HPoint3, 9> pts{v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7], v[8]};
    const QuadricConstruction c = construct_quadric_through_9(pts, PairChoice::default_covering());
    RatVec<10> expected;
    for (std::size_t i = 0; i < 10; ++i) expected[i] = Rational(BigInt(reference::kQuadricMonomials[i], 10));
    bool weights = true;
    for (std::size_t i = 0; i < 4; ++i) weights = weights && c.multipliers[i] == Rational(BigInt(reference::kQuadricWeights[i], 10));
    d["coefficients"] = rational_list(canonical(c.quadric.monomial_coeffs()));
    d["multipliers"] = rational_list(c.multipliers);
    return weights && proportional(c.quadric.monomial_coeffs(), expected) && quadric_oracle_det(pts) == c.quadric;
  }));

  checks.push_back(run_check("reference displacements", [](ojson& d) {
    const double e1 = max_image_error(reference::kDisplacementFirst, reference::kImagesFirst);
    const double e2 = max_image_error(reference::kDisplacementSecond, reference::kImagesSecond);
    // Four decimal digits on both sides; the looser bound absorbs the rounding.
    d["max_error_first"] = e1;
    d["max_error_second"] = e2;
    d["tolerance"] = 1e-3;
    return e1 < 1e-3 && e2 < 1e-3;
  }));

  const SolutionSet set = solve(build_constraints(reference::kPentagon));
  checks.push_back(run_check("cone placement", [&](ojson& d) {
    std::vector<double> got, want(reference::kRootTable.begin(), reference::kRootTable.end());
    for (const auto& s : set.solutions) got.push_back(s.q.real().w);
    std::sort(got.begin(), got.end());
    std::sort(want.begin(), want.end());
    d["x0"] = got;
    if (got.size() != want.size()) return false;
    for (std::size_t i = 0; i < got.size(); ++i)
      if (std::abs(got[i] - want[i]) > 1e-3) return false;
    return set.complete;
  }));

  checks.push_back(run_check("eliminant factors", [&](ojson& d) {
    bool ok = true;
    for (const auto& s : set.solutions) {
      const double x0 = s.q.real().w;
      ok = ok && std::min(uvp_scaled_residual(x0, UvpFactor::F8a), uvp_scaled_residual(x0, UvpFactor::F8b)) < 1e-4;
    }
    const bool f16 = f16_no_real_roots_check();
    d["roots_matched"] = ok;
    d["degree16_positive"] = f16;
    return ok && f16 && !set.solutions.empty();
  }));

  checks.push_back(run_check("cone pair translation", [](ojson& d) {
    const auto& img = reference::kImagesFirst;
    const auto ts = recover_translation(img[0], img[1], img[2]);
    const Point3 t = ts.back();
    d["translation"] = point_json(t);
    return ts.size() == 2 && distance(t, reference::kTranslation) < 2e-3 &&
           shared_conic_check(img, t).within_tol;
  }));

  checks.push_back(run_check("mirror pairs", [&](ojson& d) {
    const MirrorPairing mp = pair_mirrored_solutions(set, reference::kPentagon);
    d["pairs"] = mp.pairs.size();
    return mp.pairs.size() == 4 && mp.unpaired.empty();
  }));

  ojson result;
  result["command"] = "selfcheck";
  ojson list = ojson::array();
  bool all = true;
  for (const auto& c : checks) {
    list.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    all = all && c.passed;
  }
  result["checks"] = list;
  result["passed"] = all;
  if (!all) {
    out.status = Status::Internal;
    out.message = "self check failed";
  }
  result["status"] = status_name(out.status);
  out.json = result.dump(2) + "\n";
}

}  // namespace

const char* status_name(Status s) {
  switch (s) {
    case Status::Ok: return "ok";
    case Status::InputError: return "input_error";
    case Status::Degenerate: return "degenerate";
    case Status::BudgetExhausted: return "budget_exhausted";
    case Status::Internal: return "internal_error";
  }
  return "unknown";
}

PipelineOutput run_conic5(std::string_view document, const ConicOptions& opts) {
  return guarded("conic5", [&](PipelineOutput& out) { conic5_body(document, opts, out); });
}

PipelineOutput run_quadric9(std::string_view document, const QuadricOptions& opts) {
  return guarded("quadric9", [&](PipelineOutput& out) { quadric9_body(document, opts, out); });
}

PipelineOutput run_place_cone(std::string_view document, const PlaceConeOptions& opts) {
  return guarded("place-cone", [&](PipelineOutput& out) { place_cone_body(document, opts, out); });
}

PipelineOutput run_cone_pair(std::string_view document, const ConePairOptions& opts) {
  return guarded("cone-pair", [&](PipelineOutput& out) { cone_pair_body(document, opts, out); });
}

PipelineOutput run_selfcheck() {
  return guarded("selfcheck", [](PipelineOutput& out) { selfcheck_body(out); });
}

VerifyReport verify_result_document(std::string_view json) {
  VerifyReport rep;
  try {
    const ojson doc = ojson::parse(json);
    if (doc.contains("error")) {
      rep.problems.push_back("document reports an error: " + doc["error"].value("message", std::string()));
      return rep;
    }
    const std::string cmd = doc.at("command").get<std::string>();
    if (cmd == "conic5") {
      verify_conic5(doc, rep);
    } else if (cmd == "quadric9") {
      verify_quadric9(doc, rep);
    } else if (cmd == "place-cone") {
      verify_place_cone(doc, rep);
    } else if (cmd == "cone-pair") {
      verify_cone_pair(doc, rep);
    } else if (cmd == "selfcheck") {
      for (const ojson& c : doc.at("checks")) {
        ++rep.checks;
        if (!c.at("passed").get<bool>()) rep.problems.push_back("check failed: " + c.at("name").get<std::string>());
      }
    } else {
      rep.problems.push_back("unknown command '" + cmd + "'");
    }
  } catch (const std::exception& e) {
    rep.problems.push_back(std::string("unreadable result document: ") + e.what());
  }
  rep.ok = rep.problems.empty() && rep.checks > 0;
  return rep;
}

}  // namespace conicpen
