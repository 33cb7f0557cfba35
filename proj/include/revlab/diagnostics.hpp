#pragma once

#include <functional>
#include <span>
#include <vector>

#include "revlab/piecewise.hpp"

namespace revlab {

using ScalarField = std::function<cplx(double)>;

/// A point where a closed-form revival profile is discontinuous or has a
/// logarithmic cusp, with the amplitudes predicted by the closed form.
struct SingularPoint {
  double x = 0.0;
  /// Right limit minus left limit.
  cplx predicted_jump = 0.0;
  /// c in f(x0 +- e) ~ c log(1/e) for the symmetric part.
  cplx predicted_cusp = 0.0;
  /// Translate indices k contributing to this point.
  std::vector<int> ks;
};

/// Merge points closer than tol (summing amplitudes); result sorted by x.
std::vector<SingularPoint> merge_singular_points(std::vector<SingularPoint> pts, double tol);

/// Distance from x to the nearest point of the set (infinity when empty), on a
/// circle of circumference `period` when period > 0, else on the line.
double distance_to_set(double x, std::span<const SingularPoint> pts, double period = 0.0);

/// f(x0 + eps) - f(x0 - eps).
cplx jump_estimate(const ScalarField& f, double x0, double eps);

struct CuspFit {
  cplx rate = 0.0;           ///< least-squares slope against log(1/eps)
  double max_residual = 0.0; ///< largest deviation from the fitted line
};

/// Fit (f(x0+e) + f(x0-e))/2 = a + rate * log(1/e) over the given radii.
CuspFit cusp_fit(const ScalarField& f, double x0, std::span<const double> eps);

struct JumpTableRow {
  double x = 0.0;
  cplx predicted_jump = 0.0;
  cplx measured_jump = 0.0;
  cplx predicted_cusp = 0.0;
  cplx measured_cusp = 0.0;
  double cusp_residual = 0.0;
};

/// Measure jumps (at radius jump_eps) and cusp rates at each predicted point.
std::vector<JumpTableRow> jump_table(const ScalarField& f, std::span<const SingularPoint> pts,
                                     double jump_eps, std::span<const double> cusp_eps);

struct DetectedJump {
  double x = 0.0;
  cplx jump = 0.0;
};

/// Blind detection of discontinuities of f on (lo, hi): sample on `samples`
/// uniform cells, bisect every cell whose increment exceeds `threshold`, and
/// keep the located points whose two-sided jump at a tiny radius still
/// exceeds threshold / 2.
std::vector<DetectedJump> scan_jumps(const ScalarField& f, double lo, double hi, int samples,
                                     double threshold);

}  // namespace revlab
