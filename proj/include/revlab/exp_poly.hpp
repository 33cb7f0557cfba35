#pragma once

#include <span>
#include <vector>

#include "revlab/piecewise.hpp"

namespace revlab {

/// J_j(z) = integral_0^1 s^j e^{z s} ds, for Re z <= 0.
cplx exp_moment(int j, cplx z);

/// integral_0^h p(s) exp(z s + w) ds, exactly. The exponential is factored at
/// whichever endpoint has the larger real exponent, so the result only
/// overflows when the integral itself does.
cplx integrate_poly_exp(std::span<const cplx> p, double h, cplx z, cplx w = 0.0);

/// integral_0^l f(x) exp(z x) dx.
cplx integrate_exp(const PiecewiseFn& f, cplx z);

/// poly(x - anchor) * exp(rate * (x - anchor)).
struct ExpPolyTerm {
  std::vector<cplx> poly;
  cplx rate;
  double anchor;

  cplx eval(double x) const;
  cplx derivative(double x) const;
};

/// Piecewise sum of exponential-polynomial terms on [0, l]. Used for
/// eigenfunctions: each term is anchored so that it is O(1) on its piece.
class ExpPolyFn {
 public:
  ExpPolyFn() = default;
  ExpPolyFn(double length, std::vector<double> breaks, std::vector<std::vector<ExpPolyTerm>> pieces);

  double length() const { return length_; }
  std::span<const double> breaks() const { return breaks_; }
  std::size_t piece_count() const { return pieces_.size(); }
  std::span<const ExpPolyTerm> terms(std::size_t j) const { return pieces_[j]; }

  cplx eval(double x) const;
  /// One-sided derivative from the piece containing x (right convention).
  cplx derivative(double x) const;
  /// x -> f(l - x).
  ExpPolyFn reflected() const;
  /// x -> conj(f(x)).
  ExpPolyFn conj() const;
  ExpPolyFn operator*(cplx c) const;

 private:
  std::size_t piece_index(double x) const;

  double length_ = 1.0;
  std::vector<double> breaks_;
  std::vector<std::vector<ExpPolyTerm>> pieces_;
};

/// <f, g> = integral f conj(g), by exact antiderivatives.
cplx inner(const PiecewiseFn& f, const ExpPolyFn& g);
cplx inner(const ExpPolyFn& f, const ExpPolyFn& g);
double norm_sq(const ExpPolyFn& f);
double norm_sq(const PiecewiseFn& f);

}  // namespace revlab
