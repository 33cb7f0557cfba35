#pragma once

#include <optional>
#include <span>
#include <vector>

#include "revlab/diagnostics.hpp"
#include "revlab/hilbert.hpp"
#include "revlab/piecewise.hpp"
#include "revlab/specfun.hpp"

namespace revlab {

inline constexpr int kDefaultDislocModes = 250;

enum class Side { left, right };

/// Left: t = 2 b^2 p / (pi q) > 0, revival on (0, b).
/// Right: t = -2 (1-b)^2 p / (pi q) < 0, revival on (b, 1).
struct DislocRationalTime {
  long long p = 1;
  long long q = 1;
  Side side = Side::left;

  static DislocRationalTime make(long long p, long long q, Side side = Side::left);
  double t(double b) const;
};

struct DislocTime {
  double t = 0.0;
  std::optional<DislocRationalTime> rational;

  DislocTime(double value) : t(value) {}
  DislocTime(DislocRationalTime rt, double b) : t(rt.t(b)), rational(rt) {}
};

/// 2 integral_0^1 [u0(b y) sin(w y) + u0(b+) cos(w y)] dy, w = pi (n + 1/4).
cplx u0_tilde_dis(const PiecewiseFn& u0, double b, int n);

/// Truncated expansion in the eigenfunctions of the dislocated operator.
class DislocSolver {
 public:
  DislocSolver(const PiecewiseFn& u0, double b, int modes = kDefaultDislocModes);

  double b() const { return b_; }
  int modes() const { return modes_; }
  const std::vector<DislocEigenPair>& pairs() const { return pairs_; }
  /// <u0, phi_n> / ||phi_n||^2, aligned with pairs().
  std::span<const cplx> coefficients() const { return coeffs_; }
  std::span<const cplx> tilde() const { return tilde_; }

  /// sum_{|n| <= N} c_n e^{-i lambda_n t} phi_n(x).
  cplx solve(double x, const DislocTime& t) const;
  std::vector<cplx> solve(std::span<const double> xs, const DislocTime& t) const;
  /// Left revival series, valid on (0, b).
  cplx ur(double x, const DislocTime& t) const;
  std::vector<cplx> ur(std::span<const double> xs, const DislocTime& t) const;
  cplx uc(double x, const DislocTime& t) const { return solve(x, t) - ur(x, t); }

  /// sum_n |c_n|^2 ||phi_n||^2, the squared norm of the truncated solution at any time.
  double energy() const;

 private:
  PiecewiseFn u0_;
  double b_;
  int modes_;
  std::vector<DislocEigenPair> pairs_;
  std::vector<cplx> coeffs_;
  std::vector<cplx> tilde_;
};

cplx solve_series_dis(const PiecewiseFn& u0, double b, double x, const DislocTime& t,
                      int modes = kDefaultDislocModes);
/// sum_{n=1}^{N} u0_tilde_dis(n) e^{-i nu_n^2 t} sin(nu_n x), nu_n = pi (n + 1/4) / b.
cplx ur_series_dis(const PiecewiseFn& u0, double b, double x, const DislocTime& t,
                   int modes = kDefaultDislocModes);
std::vector<cplx> ur_series_dis(const PiecewiseFn& u0, double b, std::span<const double> xs,
                                const DislocTime& t, int modes = kDefaultDislocModes);
/// Revival series of the reflected problem, for x in (b, 1): the right-side
/// counterpart of ur_series_dis, evaluated at 1 - x and time -t.
std::vector<cplx> ur_series_dis_right(const PiecewiseFn& u0, double b, std::span<const double> xs,
                                      const DislocTime& t, int modes = kDefaultDislocModes);

/// (1/(2q)) sum_{m<2q} e^{-i (m + 1/4)^2 2 pi p / q} e^{i pi m k / q}.
cplx dk_dis(long long p, long long q, long long k);

/// G^b on [0, 2]: e^{-i pi x/4}[u0(b+) + i u0(b x)] on [0, 1] and
/// e^{-i pi x/4}[i u0(b+) + u0(b(2 - x))] on [1, 2], extended with period 2.
struct GbFunction {
  double b = 0.5;
  /// The bracketed polynomial part; the modulation is carried by `g`.
  PiecewiseFn base;
  ModulatedFn g;

  cplx eval(double x) const { return g.eval(x); }
};

GbFunction g_u0_b(const PiecewiseFn& u0, double b);

/// (R u0, 1 - b) with R u0(x) = u0(1 - x).
std::pair<PiecewiseFn, double> reflect_problem(const PiecewiseFn& u0, double b);

/// Closed form of the revival part on the side selected by the time. The right
/// side is evaluated through the reflected problem at 1 - x.
class DislocClosedForm {
 public:
  struct Parts {
    cplx L1 = 0.0;
    cplx L2 = 0.0;
    cplx L3 = 0.0;
    cplx value = 0.0;
  };

  DislocClosedForm(const PiecewiseFn& u0, double b, DislocRationalTime rt,
                   int hilbert_modes = kDefaultHilbertModes, double delta = 1e-2);

  double lo() const { return side_ == Side::left ? 0.0 : b_; }
  double hi() const { return side_ == Side::left ? b_ : 1.0; }
  /// Throws SingularityError within delta * (side length) of a singular abscissa.
  Parts parts(double x) const;
  Parts parts_unchecked(double x) const;
  cplx eval(double x) const { return parts(x).value; }

  /// Singular abscissae in original coordinates.
  const std::vector<SingularPoint>& singular_points() const { return singular_; }
  double distance_to_singular(double x) const;
  double exclusion_radius() const { return delta_ * c_; }
  const std::vector<cplx>& d() const { return d_; }
  const GbFunction& gb() const { return gb_; }

 private:
  Parts left_parts(double x) const;

  double b_;
  Side side_;
  double c_;  ///< interface position of the (possibly reflected) left problem
  DislocRationalTime rt_;
  GbFunction gb_;
  FourierSeries series_;
  std::vector<cplx> d_;
  cplx l3_const_ = 0.0;
  double delta_;
  std::vector<SingularPoint> singular_;
};

cplx ur_closed_dis(const PiecewiseFn& u0, double b, double x, DislocRationalTime rt,
                   int hilbert_modes = kDefaultHilbertModes, double delta = 1e-2);

/// Samples of the decomposition on the revival side of rt.
struct DislocRevivalParts {
  Side side = Side::left;
  std::vector<double> grid;
  std::vector<cplx> u, ur_series, ur_closed, uc;  ///< ur_closed is NaN at excluded points
  std::vector<char> excluded;
  double sup_err = 0.0;
  double l2_err = 0.0;  ///< sqrt(sum over kept points of err^2 * spacing)
  std::size_t excluded_count = 0;
};

/// Midpoint grid of `grid` points on the revival side. On the right side the
/// revival series is taken from the reflected problem at 1 - x. Without
/// `with_solution` the eigenfunction expansion is skipped and u, uc stay empty.
DislocRevivalParts disloc_revival(const PiecewiseFn& u0, double b, DislocRationalTime rt, int modes,
                                  int grid, int hilbert_modes = kDefaultHilbertModes,
                                  double delta = 1e-2, bool with_solution = true);

}  // namespace revlab
