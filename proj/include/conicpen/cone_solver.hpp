#pragma once

// Placement of a planar five-point array on the right cone x^2 + y^2 - z^2 = 0:
// the image of A lies on the generator y = 0, x = z, the images of B..E lie
// on the cone, plus the norm and Study conditions. Eight polynomial equations
// in the eight Study parameters, solved by multi-start damped Newton.

#include <array>
#include <complex>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "conicpen/kinematics.hpp"

namespace conicpen {

using StudyVec = std::array<double, 8>;
using Jacobian8 = std::array<std::array<double, 8>, 8>;
using ComplexStudyVec = std::array<std::complex<double>, 8>;
using ComplexJacobian8 = std::array<std::array<std::complex<double>, 8>, 8>;

class ConstraintSystem {
 public:
  explicit ConstraintSystem(const std::array<Point3, 5>& pentagon) : pentagon_(pentagon) {}

  const std::array<Point3, 5>& pentagon() const { return pentagon_; }

  /// [img(A).y, img(A).x - img(A).z, cone(img B..E), |x|^2 - 1, x.y], with
  /// img the undivided sandwich x c x~ + y x~ - x y~.
  StudyVec residuals(const StudyVec& v) const;
  /// J[i][j] = d r_i / d v_j
  Jacobian8 jacobian(const StudyVec& v) const;

  /// Same polynomials over the complex numbers.
  ComplexStudyVec residuals(const ComplexStudyVec& v) const;
  ComplexJacobian8 jacobian(const ComplexStudyVec& v) const;

 private:
  std::array<Point3, 5> pentagon_;
};

/// Throws BadPentagon unless every point has z = 0 and the first is the origin.
ConstraintSystem build_constraints(const std::array<Point3, 5>& pentagon);

struct SolverConfig {
  std::uint64_t seed = 20240611;
  int max_starts = 2000;
  double tol_residual = 1e-10;
  double tol_dedup = 1e-6;
  int early_stop_window = 500;
  double y_radius = 5.0;
  int max_iterations = 80;
};

struct Solution {
  DualQuaternion q;
  double residual;  // max |r_i|
};

struct SolutionSet {
  std::vector<Solution> solutions;  // sorted by x0 descending, then lexicographic
  bool complete = false;            // class count stable for the full window
  int starts_used = 0;
  int converged_starts = 0;
};

/// Sign representative of q ~ -q: x0 > 0, or the first nonzero entry positive.
StudyVec sign_canonical(const StudyVec& v);

SolutionSet solve(const ConstraintSystem& system, const SolverConfig& cfg = {});

/// Factors of the univariate eliminant in x0. The *AltLead variants carry the
/// alternative leading coefficients (111183744 and 516716384256); F8b and F16
/// carry the leading coefficients that the solutions actually satisfy
/// (1183744 and 5116716384256).
enum class UvpFactor { F8a, F8b, F8bAltLead, F16, F16AltLead };

const char* uvp_factor_name(UvpFactor f);

/// Coefficients of x0^0, x0^2, x0^4, ... (even polynomials).
const std::vector<double>& uvp_even_coefficients(UvpFactor f);

double uvp_residual(double x0, UvpFactor f);
/// |value| divided by the largest single-term magnitude at x0.
double uvp_scaled_residual(double x0, UvpFactor f);

struct SamplingSpec {
  double lo = -2.0;
  double hi = 2.0;
  int samples = 4001;
  int max_depth = 40;
};

struct PositivityReport {
  bool positive_on_interval = false;
  bool positive_beyond = false;  // |x| from the interval edge out to the Cauchy root bound
  double min_value = 0;
  double argmin = 0;
};

/// Sign sampling with derivative-bounded refinement of each grid cell on
/// [lo, hi] and on the remaining range up to the Cauchy bound.
PositivityReport f16_positivity(const SamplingSpec& grid = {}, UvpFactor factor = UvpFactor::F16);
bool f16_no_real_roots_check(const SamplingSpec& grid = {}, UvpFactor factor = UvpFactor::F16);

struct MirrorPairing {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::vector<std::size_t> unpaired;
  /// Nonzero cone-pair translation recovered from the first three images, per solution.
  std::vector<Point3> translations;
};

/// Partners i with j when the image pentagon of j is the reflection, across a
/// vertical plane through the z axis, of the image pentagon of i shifted by
/// minus its recovered apex translation; the pair must also compare as
/// MirroredPair. Only mutual partners are reported.
MirrorPairing pair_mirrored_solutions(const SolutionSet& set, const std::array<Point3, 5>& pentagon,
                                      double tol = 1e-6);

}  // namespace conicpen
