#pragma once

#include <vector>

#include "revlab/exp_poly.hpp"
#include "revlab/piecewise.hpp"

namespace revlab {

/// Positive-index eigenpair of the third-order operator, stored in the scaled
/// gauge e^{-sqrt(3) k / 2} phi_n. The partner with index -n is -conj(phi_n)
/// with eigenvalue -k^3 and is never stored.
struct AiryEigenPair {
  int n = 0;
  double k = 0.0;
  double kappa = 0.0;  ///< (2n - 1/3) pi
  double gamma = 0.0;  ///< k - kappa, resolved to full relative precision
  double lambda = 0.0;
  /// Three terms A_r exp(i alpha^r k (x - a_r)), anchors a = (0, 0, 1).
  ExpPolyFn scaled;
  double scaled_norm_sq = 0.0;
};

/// Scaled characteristic determinant e^{-sqrt(3) k / 2} Delta(k) for real k >= 0.
double airy_det_scaled(double k);
/// Unscaled determinant for complex argument (moderate |k| only).
cplx airy_det(cplx k);
/// Offset k_n - kappa_n of the n-th positive root.
double airy_root_offset(int n);
double airy_root(int n);
AiryEigenPair airy_pair(int n);
cplx airy_eigfun_scaled(const AiryEigenPair& pair, double x);
double airy_norm_scaled(const AiryEigenPair& pair);
/// Pairs n = 1..n_max, built concurrently.
std::vector<AiryEigenPair> airy_spectrum(int n_max);

/// Eigenpair of the dislocated operator with interface at b.
///
/// n > 0 lives on the side c = b, n < 0 on c = 1 - b (mirror image), with
/// lambda = +k^2 and -k^2 respectively. Index 0 is the hat function when
/// b = 1/2; otherwise it is the low root k < pi / (4c) of tan(kc) =
/// tanh(k(1-c)) on the shorter side c = min(b, 1-b) < 1/2.
struct DislocEigenPair {
  int n = 0;
  double b = 0.5;
  double c = 0.5;
  double k = 0.0;
  double nu = 0.0;     ///< pi (|n| + 1/4) / c
  double gamma = 0.0;  ///< k - nu
  double lambda = 0.0;
  int B_sign = 0;      ///< sign of sin(kc) / sinh(k(1-c))
  double B_log = 0.0;  ///< log of its magnitude
  ExpPolyFn eigfun;
  double norm_sq = 0.0;
};

/// tan(kc) - tanh(k(1-c)).
double disloc_char(double c, double k);
/// Offset gamma in k = pi (n + 1/4) / c + gamma. n >= 1, or n = 0 when c < 1/2.
double disloc_root_offset(double c, int n);
double disloc_root(double c, int n);
/// Side (+1 for c = b, -1 for c = 1 - b) carrying the index-0 mode, 0 for the hat.
int disloc_zero_mode_side(double b);
DislocEigenPair disloc_pair(double b, int n);
double disloc_eigfun(double b, const DislocEigenPair& pair, double x);
double disloc_norm(double b, const DislocEigenPair& pair);
/// Pairs for n = -n_max..n_max (index 0 included), ordered by n.
std::vector<DislocEigenPair> disloc_spectrum(double b, int n_max);

/// One row of the spectrum export.
struct SpectrumRow {
  int n;
  double k;
  double kappa_or_nu;
  double lambda;
  double norm_sq;
  double residual;
};

std::vector<SpectrumRow> airy_spectrum_rows(int n_max);
std::vector<SpectrumRow> disloc_spectrum_rows(double b, int n_min, int n_max);

}  // namespace revlab
