#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Dense>

#include "conicpen/cone_solver.hpp"
#include "conicpen/error.hpp"
#include "fixtures.hpp"

using namespace conicpen;

namespace {

const SolutionSet& reference_solutions() {
  static const SolutionSet set = solve(build_constraints(fixtures::pentagon()));
  return set;
}

std::vector<double> sorted_x0(const SolutionSet& set) {
  std::vector<double> x0;
  for (const auto& s : set.solutions) x0.push_back(s.q.real().w);
  std::sort(x0.begin(), x0.end());
  return x0;
}

double max_abs(const StudyVec& r) {
  double m = 0;
  for (double v : r) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace

TEST_SUITE("cone_solver") {
  TEST_CASE("system builder preconditions") {
    auto pent = fixtures::pentagon();
    pent[2].z = 0.5;
    CHECK_THROWS_AS(build_constraints(pent), GeometryError);
    pent = fixtures::pentagon();
    pent[0] = {1, 0, 0};
    try {
      build_constraints(pent);
      FAIL("no throw");
    } catch (const GeometryError& e) {
      CHECK(e.code() == ErrorCode::BadPentagon);
    }
  }

  TEST_CASE("residuals at known displacements") {
    const ConstraintSystem sys = build_constraints(fixtures::pentagon());
    const StudyVec r = sys.residuals(DualQuaternion::identity().study());
    CHECK(r[0] == 0);
    CHECK(r[1] == 0);
    CHECK(r[2] == 25);
    CHECK(r[3] == 2);
    CHECK(r[4] == 9);
    CHECK(r[5] == 20);
    CHECK(max_abs(sys.residuals(fixtures::dq_first().study())) < 5e-3);
    CHECK(max_abs(sys.residuals(fixtures::dq_second().study())) < 5e-3);
  }

  TEST_CASE("jacobian against central differences") {
    const ConstraintSystem sys = build_constraints(fixtures::pentagon());
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u(-1, 1);
    for (int trial = 0; trial < 100; ++trial) {
      StudyVec v;
      for (auto& e : v) e = u(rng);
      const Jacobian8 J = sys.jacobian(v);
      double worst = 0, scale = 1;
      for (int j = 0; j < 8; ++j) {
        const double h = 1e-5;
        StudyVec vp = v, vm = v;
        vp[j] += h;
        vm[j] -= h;
        const StudyVec rp = sys.residuals(vp), rm = sys.residuals(vm);
        for (int i = 0; i < 8; ++i) {
          const double fd = (rp[i] - rm[i]) / (2 * h);
          worst = std::max(worst, std::abs(fd - J[i][j]));
          scale = std::max(scale, std::abs(J[i][j]));
        }
      }
      CHECK(worst / scale < 1e-6);
    }
  }

  TEST_CASE("complex evaluation agrees with real evaluation") {
    const ConstraintSystem sys = build_constraints(fixtures::pentagon());
    const StudyVec v = fixtures::dq_second().study();
    ComplexStudyVec cv;
    for (int i = 0; i < 8; ++i) cv[i] = v[i];
    const auto r = sys.residuals(v);
    const auto cr = sys.residuals(cv);
    for (int i = 0; i < 8; ++i) CHECK(std::abs(cr[i] - r[i]) < 1e-14);
  }

  TEST_CASE("eight placements") {
    const SolutionSet& set = reference_solutions();
    CHECK(set.complete);
    REQUIRE(set.solutions.size() == 8);
    auto expected = fixtures::root_table();
    std::sort(expected.begin(), expected.end());
    const auto got = sorted_x0(set);
    for (std::size_t i = 0; i < 8; ++i) CHECK(std::abs(got[i] - expected[i]) < 1e-3);

    const ConstraintSystem sys = build_constraints(fixtures::pentagon());
    const auto pent = fixtures::pentagon();
    for (std::size_t k = 0; k < set.solutions.size(); ++k) {
      const Solution& s = set.solutions[k];
      const StudyVec v = s.q.study();
      CHECK(s.residual < 1e-10);
      CHECK(v == sign_canonical(v));
      if (k > 0) CHECK(set.solutions[k - 1].q.real().w >= s.q.real().w);

      StudyVec neg;
      for (int i = 0; i < 8; ++i) neg[i] = -v[i];
      CHECK(sys.residuals(neg) == sys.residuals(v));

      const Point3 a = dq_act(s.q, pent[0]);
      CHECK(std::abs(a.y) < 1e-8);
      CHECK(std::abs(a.x - a.z) < 1e-8);
      for (int i = 1; i < 5; ++i) {
        const Point3 p = dq_act(s.q, pent[i]);
        CHECK(std::abs(p.x * p.x + p.y * p.y - p.z * p.z) < 1e-8);
      }

      const double x0 = s.q.real().w;
      CHECK(std::min(uvp_scaled_residual(x0, UvpFactor::F8a), uvp_scaled_residual(x0, UvpFactor::F8b)) < 1e-6);
    }
  }

  TEST_CASE("placement is intrinsic to the pentagon") {
    const auto pent = fixtures::pentagon();
    const double th = 0.8;
    std::array<Point3, 5> turned;
    for (std::size_t i = 0; i < 5; ++i)
      turned[i] = {std::cos(th) * pent[i].x - std::sin(th) * pent[i].y,
                   std::sin(th) * pent[i].x + std::cos(th) * pent[i].y, 0};
    const SolutionSet set = solve(build_constraints(turned));
    REQUIRE(set.solutions.size() == 8);
    const auto a = sorted_x0(set), b = sorted_x0(reference_solutions());
    // x0 changes with the frame, but the rotation about z acts on the set of
    // placements; compare the multiset of image-A heights instead.
    std::vector<double> ha, hb;
    for (const auto& s : set.solutions) ha.push_back(dq_act(s.q, turned[0]).z);
    for (const auto& s : reference_solutions().solutions) hb.push_back(dq_act(s.q, pent[0]).z);
    std::sort(ha.begin(), ha.end());
    std::sort(hb.begin(), hb.end());
    for (std::size_t i = 0; i < 8; ++i) CHECK(std::abs(ha[i] - hb[i]) < 1e-6);
    (void)a;
    (void)b;
  }

  TEST_CASE("budget and determinism") {
    SolverConfig one;
    one.max_starts = 1;
    const SolutionSet partial = solve(build_constraints(fixtures::pentagon()), one);
    CHECK_FALSE(partial.complete);
    CHECK(partial.starts_used == 1);

    const SolutionSet again = solve(build_constraints(fixtures::pentagon()));
    REQUIRE(again.solutions.size() == reference_solutions().solutions.size());
    for (std::size_t i = 0; i < again.solutions.size(); ++i)
      CHECK(again.solutions[i].q.study() == reference_solutions().solutions[i].q.study());

    SolverConfig other;
    other.seed = 7;
    const SolutionSet reseeded = solve(build_constraints(fixtures::pentagon()), other);
    REQUIRE(reseeded.solutions.size() == 8);
    for (std::size_t i = 0; i < 8; ++i) {
      const auto a = reseeded.solutions[i].q.study(), b = reference_solutions().solutions[i].q.study();
      for (int k = 0; k < 8; ++k) CHECK(std::abs(a[k] - b[k]) < 1e-6);
    }

    SolverConfig bad;
    bad.tol_residual = 0;
    CHECK_THROWS_AS(solve(build_constraints(fixtures::pentagon()), bad), GeometryError);
  }

  TEST_CASE("univariate factors") {
    CHECK(uvp_residual(0, UvpFactor::F8a) == 81);
    CHECK(uvp_residual(0, UvpFactor::F16) == 6561);
    CHECK(std::abs(uvp_residual(0.1380, UvpFactor::F8a)) < 0.05);
    CHECK(uvp_scaled_residual(0.6333, UvpFactor::F8b) < 1e-4);
    CHECK(uvp_scaled_residual(0.6333, UvpFactor::F8bAltLead) > 1e-2);
    for (double x : {0.3, 0.7, 1.9})
      for (UvpFactor f : {UvpFactor::F8a, UvpFactor::F8b, UvpFactor::F16, UvpFactor::F16AltLead})
        CHECK(uvp_residual(x, f) == uvp_residual(-x, f));
  }

  TEST_CASE("degree sixteen factor") {
    CHECK(f16_no_real_roots_check());
    const PositivityReport rep = f16_positivity();
    CHECK(rep.positive_on_interval);
    CHECK(rep.positive_beyond);
    CHECK(rep.min_value > 0);

    // The alternative leading coefficient gives real roots near +-0.765.
    CHECK_FALSE(f16_no_real_roots_check({}, UvpFactor::F16AltLead));
    CHECK(uvp_residual(0.7, UvpFactor::F16AltLead) * uvp_residual(0.8, UvpFactor::F16AltLead) < 0);
  }

  TEST_CASE("degree sixteen factor from complex placements") {
    // Complex Newton from random complex starts; the x0^2 values with nonzero
    // imaginary part are the roots of the degree-16 factor in u = x0^2.
    const ConstraintSystem sys = build_constraints(fixtures::pentagon());
    std::mt19937_64 rng(2718);
    std::normal_distribution<double> n(0, 1);
    std::vector<std::complex<double>> roots;
    for (int start = 0; start < 4000 && roots.size() < 8; ++start) {
      ComplexStudyVec v;
      for (auto& e : v) {
        const double re = n(rng);
        e = {re, n(rng)};
      }
      bool ok = false;
      for (int it = 0; it < 60; ++it) {
        const auto r = sys.residuals(v);
        double f = 0;
        for (const auto& e : r) f = std::max(f, std::abs(e));
        if (f < 1e-12) {
          ok = true;
          break;
        }
        const auto J = sys.jacobian(v);
        Eigen::Matrix<std::complex<double>, 8, 8> M;
        Eigen::Matrix<std::complex<double>, 8, 1> rhs;
        for (int i = 0; i < 8; ++i) {
          rhs(i) = -r[i];
          for (int j = 0; j < 8; ++j) M(i, j) = J[i][j];
        }
        const Eigen::Matrix<std::complex<double>, 8, 1> step = M.fullPivLu().solve(rhs);
        for (int i = 0; i < 8; ++i) v[i] += step(i);
      }
      if (!ok) continue;
      const std::complex<double> u = v[0] * v[0];
      if (std::abs(u.imag()) < 1e-6) continue;
      if (std::none_of(roots.begin(), roots.end(), [&](auto w) { return std::abs(w - u) < 1e-7; }))
        roots.push_back(u);
    }
    REQUIRE(roots.size() == 8);

    // Expand prod (u - u_k), then scale so that the constant term is 6561.
    std::vector<std::complex<double>> poly{1.0};
    for (const auto& w : roots) {
      std::vector<std::complex<double>> next(poly.size() + 1, 0.0);
      for (std::size_t i = 0; i < poly.size(); ++i) {
        next[i + 1] += poly[i];
        next[i] -= w * poly[i];
      }
      poly = next;
    }
    const std::complex<double> scale = 6561.0 / poly[0];
    const auto& expected = uvp_even_coefficients(UvpFactor::F16);
    for (std::size_t i = 0; i < poly.size(); ++i) {
      const std::complex<double> c = poly[i] * scale;
      CHECK(std::abs(c.imag()) < 1e-6 * std::abs(expected[i]) + 1e-3);
      CHECK(std::abs(c.real() - expected[i]) < 1e-6 * std::abs(expected[i]));
    }
    const auto& alt = uvp_even_coefficients(UvpFactor::F16AltLead);
    CHECK(std::abs((poly.back() * scale).real() - alt.back()) > 1e12);
  }

  TEST_CASE("mirror pairs") {
    const SolutionSet& set = reference_solutions();
    const MirrorPairing pairing = pair_mirrored_solutions(set, fixtures::pentagon());
    CHECK(pairing.pairs.size() == 4);
    CHECK(pairing.unpaired.empty());
    std::vector<int> seen(set.solutions.size(), 0);
    for (auto [i, j] : pairing.pairs) {
      ++seen[i];
      ++seen[j];
      CHECK(compare_solutions(set.solutions[i].q, set.solutions[j].q, fixtures::pentagon()).relation ==
            SolutionRelation::MirroredPair);
    }
    CHECK(std::all_of(seen.begin(), seen.end(), [](int c) { return c == 1; }));

    auto index_of = [&](double x0) {
      for (std::size_t i = 0; i < set.solutions.size(); ++i)
        if (std::abs(set.solutions[i].q.real().w - x0) < 1e-3) return i;
      return set.solutions.size();
    };
    const std::size_t a = index_of(0.1380), b = index_of(0.6333);
    CHECK(std::find(pairing.pairs.begin(), pairing.pairs.end(), std::pair{std::min(a, b), std::max(a, b)}) !=
          pairing.pairs.end());
  }
}
