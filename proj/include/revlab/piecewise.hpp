#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

namespace revlab {

using cplx = std::complex<double>;

/// A jump discontinuity: right limit minus left limit at an interior breakpoint.
struct Jump {
  double x;
  cplx height;
};

/// Piecewise polynomial on [0, l] with finitely many breakpoints.
///
/// Piece j lives on [x_j, x_{j+1}) and is stored in the local variable
/// (x - x_j); the global-variable constructor converts once on input. Point
/// values at an interior breakpoint are right limits, and at x = l the left
/// limit of the last piece.
class PiecewiseFn {
 public:
  static constexpr int kMaxDegree = 8;

  PiecewiseFn() = default;

  /// Coefficients in powers of the global variable x: pieces[j][m] multiplies x^m.
  static PiecewiseFn from_global(double length, std::vector<double> breaks,
                                 const std::vector<std::vector<cplx>>& pieces);
  /// Coefficients in powers of (x - breaks[j]).
  static PiecewiseFn from_local(double length, std::vector<double> breaks,
                                std::vector<std::vector<cplx>> pieces);
  static PiecewiseFn constant(double length, cplx value);
  /// Step function: values[j] on [breaks[j], breaks[j+1]).
  static PiecewiseFn steps(double length, std::vector<double> breaks,
                           const std::vector<cplx>& values);
  /// Piecewise Chebyshev interpolation of `f` (degree `degree` on `pieces`
  /// equal subintervals). Used to sample smooth functions into the data model.
  static PiecewiseFn interpolate(const std::function<cplx(double)>& f, double length,
                                 int pieces, int degree = kMaxDegree);

  double length() const { return length_; }
  std::span<const double> breaks() const { return breaks_; }
  std::size_t piece_count() const { return pieces_.size(); }
  std::span<const cplx> local_coeffs(std::size_t j) const { return pieces_[j]; }
  /// Coefficients of piece j re-expanded in powers of the global variable.
  std::vector<cplx> global_coeffs(std::size_t j) const;
  bool is_real() const;
  int degree() const;

  /// Index of the piece whose half-open interval holds x (last piece for x = l).
  std::size_t piece_index(double x) const;

  cplx eval(double x) const;
  cplx left_limit(double x) const;
  cplx right_limit(double x) const;

  /// Jumps at interior breakpoints with nonzero height.
  std::vector<Jump> jumps() const;

  /// g(y) = f(scale * y + shift) on [0, new_length]; the image of [0, new_length]
  /// must lie in [0, l]. Negative scale reflects. Breakpoints are mapped and
  /// those outside the image are dropped.
  PiecewiseFn pullback(double scale, double shift, double new_length) const;
  /// x -> f(l - x).
  PiecewiseFn reflected() const;

  PiecewiseFn operator+(cplx c) const;
  PiecewiseFn operator*(cplx c) const;
  /// Pointwise sum on a common refinement of the two breakpoint sets.
  PiecewiseFn operator+(const PiecewiseFn& other) const;
  /// Concatenate `right` (defined on [0, right.length()]) after this function.
  PiecewiseFn concat(const PiecewiseFn& right) const;

  /// Insert extra breakpoints without changing the function.
  PiecewiseFn refined(std::span<const double> extra) const;

 private:
  PiecewiseFn(double length, std::vector<double> breaks, std::vector<std::vector<cplx>> pieces);
  void validate() const;
  cplx eval_piece(std::size_t j, double x) const;

  double length_ = 1.0;
  std::vector<double> breaks_;
  std::vector<std::vector<cplx>> pieces_;
};

/// Absolutely continuous part and jump list: f = ac + sum_j h_j 1[x >= x_j].
struct Decomposition {
  PiecewiseFn ac;
  std::vector<Jump> jumps;
};

Decomposition decompose(const PiecewiseFn& f);

/// A real number reduced modulo a period into [0, period).
struct PeriodicPoint {
  double raw;
  double period;
  double wrapped;

  static PeriodicPoint make(double raw, double period);
};

/// Floor-based modulus into [0, period); values within 1e-15*period of the
/// period snap to 0.
double wrap_periodic(double x, double period);

/// Signed distance from x to y on the circle of circumference `period`, in
/// [-period/2, period/2).
double circular_offset(double x, double y, double period);

/// v(x - s) where v is the l-periodic extension of f from [0, l).
cplx periodic_eval(const PiecewiseFn& f, double shift, double x);

// Polynomial helpers on coefficient vectors (lowest order first).
namespace poly {

/// Horner evaluation.
cplx eval(std::span<const cplx> c, cplx s);
/// Coefficients of p(s + d).
std::vector<cplx> taylor_shift(std::span<const cplx> c, cplx d);
/// Coefficients of p(a * s).
std::vector<cplx> scale(std::span<const cplx> c, cplx a);
std::vector<cplx> multiply(std::span<const cplx> a, std::span<const cplx> b);
std::vector<cplx> conj(std::span<const cplx> c);

}  // namespace poly

}  // namespace revlab
