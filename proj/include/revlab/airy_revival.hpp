#pragma once

#include <optional>
#include <span>
#include <vector>

#include "revlab/diagnostics.hpp"
#include "revlab/hilbert.hpp"
#include "revlab/piecewise.hpp"
#include "revlab/specfun.hpp"

namespace revlab {

inline constexpr int kDefaultAiryModes = 600;
inline constexpr double kDefaultDelta = 1e-2;

/// t = p / (q pi^2) with p, q coprime and positive.
struct AiryRationalTime {
  long long p = 1;
  long long q = 1;

  /// Throws DomainError unless p, q >= 1 and gcd(p, q) = 1.
  static AiryRationalTime make(long long p, long long q);
  double t() const;
};

/// Either a plain time or a rational one; rational times get exact phases.
struct AiryTime {
  double t = 0.0;
  std::optional<AiryRationalTime> rational;

  AiryTime(double value) : t(value) {}
  AiryTime(AiryRationalTime rt) : t(rt.t()), rational(rt) {}
};

/// Throws DomainError when u0 has complex coefficients or is not on [0, 1].
void require_real_unit(const PiecewiseFn& u0);

/// integral_0^1 [u0(y) + u0(1) + u0(0)] e^{-i (2n - 1/3) pi y} dy.
cplx u0_tilde(const PiecewiseFn& u0, int n);

/// kappa_n^3 t modulo 2 pi; exact for rational times.
double airy_phase_kappa(int n, const AiryTime& t);

/// Truncated eigenfunction expansion and its revival part for one initial datum.
class AirySolver {
 public:
  AirySolver(const PiecewiseFn& u0, int modes = kDefaultAiryModes);

  int modes() const { return static_cast<int>(pairs_.size()); }
  const std::vector<AiryEigenPair>& pairs() const { return pairs_; }
  /// <u0, phi_n> / ||phi_n||^2 in the scaled gauge.
  std::span<const cplx> coefficients() const { return coeffs_; }
  std::span<const cplx> tilde() const { return tilde_; }

  double solve(double x, const AiryTime& t) const;
  double ur(double x, const AiryTime& t) const;
  double uc(double x, const AiryTime& t) const { return solve(x, t) - ur(x, t); }

  std::vector<double> solve(std::span<const double> xs, const AiryTime& t) const;
  std::vector<double> ur(std::span<const double> xs, const AiryTime& t) const;

  /// ||u0||^2 - ||partial sum at t = 0||^2, the squared L2 truncation error.
  double truncation_error_sq() const;

 private:
  PiecewiseFn u0_;
  std::vector<AiryEigenPair> pairs_;
  std::vector<cplx> coeffs_;
  std::vector<cplx> tilde_;
};

double solve_series(const PiecewiseFn& u0, double x, const AiryTime& t, int modes = kDefaultAiryModes);
double ur_series(const PiecewiseFn& u0, double x, const AiryTime& t, int modes = kDefaultAiryModes);
double uc(const PiecewiseFn& u0, double x, const AiryTime& t, int modes = kDefaultAiryModes);

/// (1/q) sum_{m<q} e^{2 pi i (m k + (4 m^3 - 2 m^2) p) / q}.
cplx dk_airy(long long p, long long q, long long k);

/// G(x) = [u0(x) + u0(1) + u0(0)] e^{i pi x / 3}, extended with period 1.
ModulatedFn g_u0_function(const PiecewiseFn& u0);
cplx g_u0(const PiecewiseFn& u0, double x);

/// Finite closed form of the revival part at a rational time.
class AiryClosedForm {
 public:
  struct Parts {
    cplx L1 = 0.0;
    cplx L2 = 0.0;
    cplx L3 = 0.0;
    double value = 0.0;
  };

  AiryClosedForm(const PiecewiseFn& u0, AiryRationalTime rt, int hilbert_modes = kDefaultHilbertModes,
                 double delta = kDefaultDelta);

  /// Throws SingularityError within delta of a singular abscissa.
  Parts parts(double x) const;
  Parts parts_unchecked(double x) const;
  double eval(double x) const { return parts(x).value; }

  const std::vector<SingularPoint>& singular_points() const { return singular_; }
  double distance_to_singular(double x) const;
  double delta() const { return delta_; }
  const std::vector<cplx>& d() const { return d_; }
  const ModulatedFn& g() const { return g_; }

 private:
  AiryRationalTime rt_;
  ModulatedFn g_;
  FourierSeries series_;
  std::vector<cplx> d_;
  cplx L3_ = 0.0;
  double delta_;
  std::vector<SingularPoint> singular_;
};

double ur_closed(const PiecewiseFn& u0, double x, AiryRationalTime rt,
                 int hilbert_modes = kDefaultHilbertModes, double delta = kDefaultDelta);

/// Grid samples of every component of the decomposition.
struct AiryRevivalParts {
  std::vector<double> grid;
  std::vector<double> u;
  std::vector<double> ur_series;
  std::vector<double> ur_closed;  ///< NaN at excluded points
  std::vector<double> uc;
  std::vector<cplx> L1, L2;
  cplx L3 = 0.0;
  std::vector<char> excluded;
  double sup_err = 0.0;
  /// sqrt(sum over kept points of err^2 / grid): the L2 norm on (0, 1) minus
  /// the excluded neighbourhoods, by the midpoint rule.
  double l2_err = 0.0;
  std::size_t excluded_count = 0;
};

/// Samples at the midpoints (j + 1/2) / grid, j < grid.
AiryRevivalParts airy_revival(const PiecewiseFn& u0, AiryRationalTime rt, int modes, int grid,
                              int hilbert_modes = kDefaultHilbertModes, double delta = kDefaultDelta);

}  // namespace revlab
