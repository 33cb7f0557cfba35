#pragma once

#include <span>
#include <vector>

#include "revlab/piecewise.hpp"

namespace revlab {

inline constexpr int kDefaultHilbertModes = 1 << 13;

/// Truncated Fourier data of an l-periodic function:
/// coefficient(n) = (1/l) integral_0^l u(y) e^{-2 pi i n y / l} dy for 1 <= |n| <= modes.
struct FourierSeries {
  double period = 1.0;
  cplx mean = 0.0;
  std::vector<cplx> pos;  ///< pos[n-1] = coefficient(n)
  std::vector<cplx> neg;  ///< neg[n-1] = coefficient(-n)

  int modes() const { return static_cast<int>(pos.size()); }
  cplx coeff(int n) const;
};

/// sum_{n=1}^{N} a[n-1] e^{2 pi i n turns}, by a rotation recurrence that is
/// re-seeded every 256 terms, with block sums combined pairwise.
cplx harmonic_sum(std::span<const cplx> a, double turns);

/// (1/l) integral_0^l f(y) e^{mu y} e^{-2 pi i n y / l} dy, exactly.
cplx fourier_exact(const PiecewiseFn& f, cplx mu, int n);
/// Coefficients |n| <= modes of f(y) e^{mu y}, computed concurrently.
FourierSeries fourier_series(const PiecewiseFn& f, cplx mu, int modes);

/// i sum_{n=1}^{N} [c(-n) e^{-2 pi i n x / l} - c(n) e^{2 pi i n x / l}].
cplx hilbert_synthesis(const FourierSeries& s, double x);
std::vector<cplx> hilbert_synthesis(const FourierSeries& s, std::span<const double> xs);
/// sum_{n=1}^{N} c(n) e^{2 pi i n x / l}.
cplx analytic_projection(const FourierSeries& s, double x);
/// Partial Fourier sum including the mean.
cplx fourier_synthesis(const FourierSeries& s, double x);

/// Closed-form transform of the indicator of [a, b] on period l:
/// (1/pi) log|sin(pi (x - a) / l) / sin(pi (x - b) / l)|.
double hilbert_indicator(double a, double b, double l, double x);

/// (1/l) PV integral_0^l f(y) cot(pi (x - y) / l) dy by singularity subtraction
/// and adaptive Gauss-Kronrod quadrature on the periodic extension of f.
cplx hilbert_pv(const PiecewiseFn& f, double l, double x);

/// The l-periodic function g(x) = base(x) e^{mu x} for x in [0, l).
class ModulatedFn {
 public:
  ModulatedFn() = default;
  ModulatedFn(PiecewiseFn base, cplx mu) : base_(std::move(base)), mu_(mu) {}

  const PiecewiseFn& base() const { return base_; }
  cplx mu() const { return mu_; }
  double period() const { return base_.length(); }

  /// Value at any real x through the periodic wrap.
  cplx eval(double x) const;
  /// Jumps on [0, l), including the one at 0 created by periodization.
  std::vector<Jump> jumps() const;
  /// integral over one period.
  cplx integral() const;
  FourierSeries series(int modes) const { return fourier_series(base_, mu_, modes); }

 private:
  PiecewiseFn base_;
  cplx mu_ = 0.0;
};

}  // namespace revlab
