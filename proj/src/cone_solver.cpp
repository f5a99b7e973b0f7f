#include "conicpen/cone_solver.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <random>
#include <sstream>

#include "conicpen/cone_pair.hpp"
#include "conicpen/error.hpp"

namespace conicpen {

namespace {

template <class T>
struct Q {
  T w, x, y, z;
  Q conj() const { return {w, -x, -y, -z}; }
};

template <class T>
Q<T> mul(const Q<T>& a, const Q<T>& b) {
  return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z, a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
          a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x, a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
}

template <class T>
Q<T> add(const Q<T>& a, const Q<T>& b) {
  return {a.w + b.w, a.x + b.x, a.y + b.y, a.z + b.z};
}

template <class T>
Q<T> sub(const Q<T>& a, const Q<T>& b) {
  return {a.w - b.w, a.x - b.x, a.y - b.y, a.z - b.z};
}

template <class T>
Q<T> basis(int k) {
  Q<T> e{T(0), T(0), T(0), T(0)};
  (k == 0 ? e.w : k == 1 ? e.x : k == 2 ? e.y : e.z) = T(1);
  return e;
}

template <class T>
Q<T> point_q(Point3 c) {
  return {T(0), T(c.x), T(c.y), T(c.z)};
}

// x c x~ + y x~ - x y~
template <class T>
Q<T> image(const Q<T>& x, const Q<T>& y, const Q<T>& c) {
  return sub(add(mul(mul(x, c), x.conj()), mul(y, x.conj())), mul(x, y.conj()));
}

template <class T>
Q<T> d_image_dx(const Q<T>& x, const Q<T>& y, const Q<T>& c, int k) {
  const Q<T> e = basis<T>(k), ec = e.conj();
  return sub(add(add(mul(mul(e, c), x.conj()), mul(mul(x, c), ec)), mul(y, ec)), mul(e, y.conj()));
}

template <class T>
Q<T> d_image_dy(const Q<T>& x, const Q<T>& c, int k) {
  (void)c;
  const Q<T> e = basis<T>(k);
  return sub(mul(e, x.conj()), mul(x, e.conj()));
}

template <class T>
std::array<T, 8> eval_residuals(const std::array<Point3, 5>& pent, const std::array<T, 8>& v) {
  const Q<T> x{v[0], v[1], v[2], v[3]}, y{v[4], v[5], v[6], v[7]};
  std::array<T, 8> r;
  const Q<T> a = image(x, y, point_q<T>(pent[0]));
  r[0] = a.y;
  r[1] = a.x - a.z;
  for (int i = 1; i < 5; ++i) {
    const Q<T> p = image(x, y, point_q<T>(pent[i]));
    r[1 + i] = p.x * p.x + p.y * p.y - p.z * p.z;
  }
  r[6] = v[0] * v[0] + v[1] * v[1] + v[2] * v[2] + v[3] * v[3] - T(1);
  r[7] = v[0] * v[4] + v[1] * v[5] + v[2] * v[6] + v[3] * v[7];
  return r;
}

template <class T>
std::array<std::array<T, 8>, 8> eval_jacobian(const std::array<Point3, 5>& pent, const std::array<T, 8>& v) {
  const Q<T> x{v[0], v[1], v[2], v[3]}, y{v[4], v[5], v[6], v[7]};
  std::array<std::array<T, 8>, 8> J;
  for (int j = 0; j < 8; ++j) {
    const int k = j % 4;
    for (int i = 0; i < 5; ++i) {
      const Q<T> c = point_q<T>(pent[i]);
      const Q<T> d = j < 4 ? d_image_dx(x, y, c, k) : d_image_dy(x, c, k);
      if (i == 0) {
        J[0][j] = d.y;
        J[1][j] = d.x - d.z;
      } else {
        const Q<T> p = image(x, y, c);
        J[1 + i][j] = T(2) * (p.x * d.x + p.y * d.y - p.z * d.z);
      }
    }
    J[6][j] = j < 4 ? T(2) * v[j] : T(0);
    J[7][j] = j < 4 ? v[j + 4] : v[j - 4];
  }
  return J;
}

double max_abs(const StudyVec& r) {
  double m = 0;
  for (double v : r) m = std::max(m, std::abs(v));
  return m;
}

double dist(const StudyVec& a, const StudyVec& b) {
  double s = 0;
  for (std::size_t i = 0; i < 8; ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

// Damped Newton; returns true on convergence to max |r| < tol.
bool newton(const ConstraintSystem& sys, StudyVec& v, const SolverConfig& cfg) {
  StudyVec r = sys.residuals(v);
  double f = max_abs(r);
  for (int it = 0; it < cfg.max_iterations; ++it) {
    if (f < cfg.tol_residual) return true;
    const Jacobian8 J = sys.jacobian(v);
    Eigen::Matrix<double, 8, 8> M;
    Eigen::Matrix<double, 8, 1> rhs;
    for (int i = 0; i < 8; ++i) {
      rhs(i) = -r[i];
      for (int j = 0; j < 8; ++j) M(i, j) = J[i][j];
    }
    const Eigen::FullPivLU<Eigen::Matrix<double, 8, 8>> lu(M);
    if (!lu.isInvertible()) return false;
    const Eigen::Matrix<double, 8, 1> step = lu.solve(rhs);

    double alpha = 1.0;
    bool accepted = false;
    for (int h = 0; h < 30; ++h, alpha *= 0.5) {
      StudyVec trial = v;
      for (int i = 0; i < 8; ++i) trial[i] += alpha * step(i);
      const StudyVec rt = sys.residuals(trial);
      const double ft = max_abs(rt);
      if (ft < f || (ft == f && f < cfg.tol_residual)) {
        v = trial;
        r = rt;
        f = ft;
        accepted = true;
        break;
      }
    }
    if (!accepted) return false;
    if (!std::isfinite(f)) return false;
  }
  return f < cfg.tol_residual;
}

double horner_even(const std::vector<double>& c, double x) {
  const double u = x * x;
  double v = 0;
  for (std::size_t i = c.size(); i-- > 0;) v = v * u + c[i];
  return v;
}

// Upper bound of |p'(x)| for |x| <= m.
double derivative_bound(const std::vector<double>& c, double m) {
  double b = 0;
  for (std::size_t i = 1; i < c.size(); ++i) b += std::abs(c[i]) * double(2 * i) * std::pow(m, double(2 * i - 1));
  return b;
}

// True iff p > 0 on [a, b]; tracks the smallest sampled value.
bool positive_on(const std::vector<double>& c, double a, double b, int depth, PositivityReport& rep) {
  const double fa = horner_even(c, a), fb = horner_even(c, b);
  for (auto [x, f] : {std::pair{a, fa}, std::pair{b, fb}})
    if (f < rep.min_value) {
      rep.min_value = f;
      rep.argmin = x;
    }
  if (fa <= 0 || fb <= 0) return false;
  const double L = derivative_bound(c, std::max(std::abs(a), std::abs(b)));
  if (std::min(fa, fb) - L * (b - a) / 2 > 0) return true;
  if (depth == 0) return false;
  const double m = 0.5 * (a + b);
  return positive_on(c, a, m, depth - 1, rep) && positive_on(c, m, b, depth - 1, rep);
}

}  // namespace

StudyVec ConstraintSystem::residuals(const StudyVec& v) const { return eval_residuals(pentagon_, v); }

Jacobian8 ConstraintSystem::jacobian(const StudyVec& v) const { return eval_jacobian(pentagon_, v); }

ComplexStudyVec ConstraintSystem::residuals(const ComplexStudyVec& v) const { return eval_residuals(pentagon_, v); }

ComplexJacobian8 ConstraintSystem::jacobian(const ComplexStudyVec& v) const { return eval_jacobian(pentagon_, v); }

ConstraintSystem build_constraints(const std::array<Point3, 5>& pentagon) {
  for (std::size_t i = 0; i < 5; ++i)
    if (pentagon[i].z != 0) fail(ErrorCode::BadPentagon, "point " + std::to_string(i) + " is not on z = 0");
  if (!(pentagon[0] == Point3{0, 0, 0})) fail(ErrorCode::BadPentagon, "first point is not the origin");
  return ConstraintSystem(pentagon);
}

StudyVec sign_canonical(const StudyVec& v) {
  for (double e : v) {
    if (e == 0) continue;
    if (e > 0) return v;
    StudyVec out;
    for (std::size_t i = 0; i < 8; ++i) out[i] = -v[i];
    return out;
  }
  return v;
}

SolutionSet solve(const ConstraintSystem& system, const SolverConfig& cfg) {
  if (cfg.max_starts < 0 || !(cfg.tol_residual > 0) || !(cfg.tol_dedup > 0) || cfg.early_stop_window < 1)
    fail(ErrorCode::InvalidArgument, "invalid solver configuration");
  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  SolutionSet set;
  int since_new = 0;
  for (int s = 0; s < cfg.max_starts; ++s) {
    StudyVec v;
    double nx = 0, ny = 0;
    for (int i = 0; i < 8; ++i) {
      v[i] = normal(rng);
      (i < 4 ? nx : ny) += v[i] * v[i];
    }
    const double radius = cfg.y_radius * std::pow(unit(rng), 0.25);
    for (int i = 0; i < 4; ++i) v[i] /= std::sqrt(nx);
    for (int i = 4; i < 8; ++i) v[i] *= radius / std::sqrt(ny);

    ++set.starts_used;
    ++since_new;
    if (newton(system, v, cfg)) {
      ++set.converged_starts;
      v = sign_canonical(v);
      const bool known = std::any_of(set.solutions.begin(), set.solutions.end(),
                                     [&](const Solution& sol) { return dist(sol.q.study(), v) < cfg.tol_dedup; });
      if (!known) {
        set.solutions.push_back({DualQuaternion(v), max_abs(system.residuals(v))});
        since_new = 0;
      }
    }
    if (!set.solutions.empty() && since_new >= cfg.early_stop_window) {
      set.complete = true;
      break;
    }
  }
  std::sort(set.solutions.begin(), set.solutions.end(), [](const Solution& a, const Solution& b) {
    const auto sa = a.q.study(), sb = b.q.study();
    if (sa[0] != sb[0]) return sa[0] > sb[0];
    return sa < sb;
  });
  return set;
}

const char* uvp_factor_name(UvpFactor f) {
  switch (f) {
    case UvpFactor::F8a: return "F8a";
    case UvpFactor::F8b: return "F8b";
    case UvpFactor::F8bAltLead: return "F8b-alt-lead";
    case UvpFactor::F16: return "F16";
    case UvpFactor::F16AltLead: return "F16-alt-lead";
  }
  return "unknown";
}

const std::vector<double>& uvp_even_coefficients(UvpFactor f) {
  static const std::vector<double> f8a{81, -5904, 97600, -591872, 1183744};
  static const std::vector<double> f8b{6561, -159408, 878400, -1775616, 1183744};
  static const std::vector<double> f8b_alt_lead{6561, -159408, 878400, -1775616, 111183744};
  static const std::vector<double> f16{6561,          60512832,        209299178880,    75713882112,  -834991220736,
                                       -1021055926272, 7827661127680, -10233432768512, 5116716384256};
  static const std::vector<double> f16_alt_lead{6561,          60512832,        209299178880,    75713882112,  -834991220736,
                                               -1021055926272, 7827661127680, -10233432768512, 516716384256};
  switch (f) {
    case UvpFactor::F8a: return f8a;
    case UvpFactor::F8b: return f8b;
    case UvpFactor::F8bAltLead: return f8b_alt_lead;
    case UvpFactor::F16: return f16;
    case UvpFactor::F16AltLead: return f16_alt_lead;
  }
  return f8a;
}

double uvp_residual(double x0, UvpFactor f) { return horner_even(uvp_even_coefficients(f), x0); }

double uvp_scaled_residual(double x0, UvpFactor f) {
  const auto& c = uvp_even_coefficients(f);
  double biggest = 0;
  for (std::size_t i = 0; i < c.size(); ++i) biggest = std::max(biggest, std::abs(c[i] * std::pow(x0, 2.0 * i)));
  return std::abs(uvp_residual(x0, f)) / biggest;
}

PositivityReport f16_positivity(const SamplingSpec& grid, UvpFactor factor) {
  if (!(grid.hi > grid.lo) || grid.samples < 2) fail(ErrorCode::InvalidArgument, "empty sampling interval");
  const auto& c = uvp_even_coefficients(factor);
  PositivityReport rep;
  rep.min_value = horner_even(c, grid.lo);
  rep.argmin = grid.lo;

  bool inside = true;
  const double h = (grid.hi - grid.lo) / (grid.samples - 1);
  for (int i = 0; i + 1 < grid.samples; ++i) {
    const double a = grid.lo + i * h, b = i + 2 == grid.samples ? grid.hi : a + h;
    if (!positive_on(c, a, b, grid.max_depth, rep)) inside = false;
  }
  rep.positive_on_interval = inside;

  // Real roots of the polynomial in u = x^2 satisfy |u| <= 1 + max |c_i / c_n|.
  double ratio = 0;
  for (std::size_t i = 0; i + 1 < c.size(); ++i) ratio = std::max(ratio, std::abs(c[i] / c.back()));
  const double bound = std::sqrt(1 + ratio);
  const double edge = std::min(std::abs(grid.lo), std::abs(grid.hi));
  bool beyond = c.back() > 0;
  if (beyond && bound > edge) {
    const int steps = static_cast<int>(std::ceil((bound - edge) / h));
    const double hh = (bound - edge) / steps;
    for (int i = 0; i < steps && beyond; ++i)
      beyond = positive_on(c, edge + i * hh, edge + (i + 1) * hh, grid.max_depth, rep);
  }
  rep.positive_beyond = beyond;
  return rep;
}

bool f16_no_real_roots_check(const SamplingSpec& grid, UvpFactor factor) {
  const PositivityReport rep = f16_positivity(grid, factor);
  return rep.positive_on_interval && rep.positive_beyond;
}

MirrorPairing pair_mirrored_solutions(const SolutionSet& set, const std::array<Point3, 5>& pentagon, double tol) {
  const std::size_t n = set.solutions.size();
  MirrorPairing out;
  std::vector<std::array<Point3, 5>> images(n), shifted(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto& img = images[i];
    for (std::size_t k = 0; k < 5; ++k) img[k] = dq_act(set.solutions[i].q, pentagon[k]);
    Point3 t{};
    try {
      const auto ts = recover_translation(img[0], img[1], img[2], 1e-6);
      if (ts.size() > 1) t = ts[1];
    } catch (const GeometryError&) {
    }
    out.translations.push_back(t);
    for (std::size_t k = 0; k < 5; ++k) shifted[i][k] = img[k] - t;
  }

  // Residual of the best reflection about a vertical plane through the z axis
  // taking shifted[i] onto images[j], or infinity if heights differ.
  auto reflection_residual = [&](std::size_t i, std::size_t j) {
    double s1 = 0, s2 = 0;
    for (std::size_t k = 0; k < 5; ++k) {
      const Point3 a = shifted[i][k], b = images[j][k];
      if (std::abs(a.z - b.z) > tol) return std::numeric_limits<double>::infinity();
      s1 += b.x * a.x - b.y * a.y;
      s2 += b.x * a.y + b.y * a.x;
    }
    const double th = std::atan2(s2, s1), c = std::cos(th), s = std::sin(th);
    double worst = 0;
    for (std::size_t k = 0; k < 5; ++k) {
      const Point3 a = shifted[i][k], b = images[j][k];
      worst = std::max(worst, std::hypot(c * a.x + s * a.y - b.x, s * a.x - c * a.y - b.y));
    }
    return worst;
  };

  std::vector<std::ptrdiff_t> partner(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    double best = tol;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      const double r = reflection_residual(i, j);
      if (r >= best) continue;
      if (compare_solutions(set.solutions[i].q, set.solutions[j].q, pentagon, tol).relation !=
          SolutionRelation::MirroredPair)
        continue;
      best = r;
      partner[i] = static_cast<std::ptrdiff_t>(j);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    const auto j = partner[i];
    if (j >= 0 && partner[static_cast<std::size_t>(j)] == static_cast<std::ptrdiff_t>(i)) {
      if (i < static_cast<std::size_t>(j)) out.pairs.emplace_back(i, static_cast<std::size_t>(j));
    } else {
      out.unpaired.push_back(i);
    }
  }
  return out;
}

}  // namespace conicpen
