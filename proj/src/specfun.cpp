#include "revlab/specfun.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "revlab/errors.hpp"
#include "revlab/parallel.hpp"

namespace revlab {

namespace {

using std::numbers::pi;
constexpr double kSqrt3 = std::numbers::sqrt3;
constexpr int kMaxIter = 100;

struct Bracket {
  double lo, hi, flo;
};

// Bisection down to width 1e-3. f(lo) and f(hi) must have opposite signs.
template <class F>
Bracket bisect(F f, double lo, double hi, const char* what) {
  double flo = f(lo);
  int iter = 0;
  while (hi - lo > 1e-3) {
    if (++iter > kMaxIter) throw NumericError(std::string(what) + ": bisection did not converge");
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return {lo, hi, flo};
}

// Bisection followed by Newton, safeguarded to stay in the bracket.
template <class F, class DF>
double bracketed_newton(F f, DF df, double lo, double hi, const char* what) {
  auto br = bisect(f, lo, hi, what);
  double x = 0.5 * (br.lo + br.hi);
  for (int it = 0; it < kMaxIter; ++it) {
    const double fx = f(x);
    if (fx == 0.0) return x;
    if ((fx < 0.0) == (br.flo < 0.0)) br.lo = x;
    else br.hi = x;
    double next = x - fx / df(x);
    if (!(next > br.lo && next < br.hi) || !std::isfinite(next)) next = 0.5 * (br.lo + br.hi);
    const double step = next - x;
    x = next;
    if (std::abs(step) <= 1e-15 * std::abs(x)) return x;
  }
  throw NumericError(std::string(what) + ": Newton did not converge");
}

// Offsets g solving f(g) = 0 that can be far smaller than the bracket. After
// bisection on f, Newton runs on the equivalent g = phi(g); phi is evaluated
// directly, so the update never cancels and tiny roots keep full relative
// precision.
template <class F, class Phi, class DPhi>
double offset_root(F f, Phi phi, DPhi dphi, double lo, double hi, const char* what) {
  const auto br = bisect(f, lo, hi, what);
  double g = 0.5 * (br.lo + br.hi);
  for (int it = 0; it < kMaxIter; ++it) {
    const double p = phi(g);
    const double d = dphi(g);
    const double next = p + d * (p - g) / (1.0 - d);
    if (!std::isfinite(next)) break;
    const double step = next - g;
    g = next;
    if (std::abs(step) <= 1e-15 * std::abs(g)) return g;
  }
  throw NumericError(std::string(what) + ": Newton did not converge");
}

double kappa_airy(int n) { return (2.0 * n - 1.0 / 3.0) * pi; }

}  // namespace

// ---------------------------------------------------------------- third order

double airy_det_scaled(double k) {
  if (k < 0.0) throw DomainError("airy_det_scaled: k must be non-negative");
  const double e = std::exp(-0.5 * kSqrt3 * k);
  const double e2 = e * e;
  return 2.0 * e * std::cos(k) - std::cos(0.5 * k) * (1.0 + e2) -
         kSqrt3 * std::sin(0.5 * k) * (1.0 - e2);
}

cplx airy_det(cplx k) {
  const cplx i(0.0, 1.0);
  const cplx a = std::polar(1.0, 2.0 * pi / 3.0);
  const cplx a2 = a * a;
  return std::exp(i * k) + std::exp(-i * k) + a * (std::exp(i * a * k) + std::exp(-i * a * k)) +
         a2 * (std::exp(i * a2 * k) + std::exp(-i * a2 * k));
}

double airy_root_offset(int n) {
  if (n < 1) throw DomainError("airy_root: index must be >= 1");
  const double kap = kappa_airy(n);
  const double sgn = n % 2 == 0 ? 1.0 : -1.0;
  // -(-1)^n airy_det_scaled(kappa + g) / 2, written in g so that tiny offsets
  // keep full relative precision.
  auto rhs = [&](double g) {
    const double e = std::exp(-0.5 * kSqrt3 * (kap + g));
    return sgn * e * std::cos(g - pi / 3.0) - e * e * std::cos(0.5 * g + pi / 6.0);
  };
  auto drhs = [&](double g) {
    const double e = std::exp(-0.5 * kSqrt3 * (kap + g));
    const double de = -0.5 * kSqrt3 * e;
    return sgn * (de * std::cos(g - pi / 3.0) - e * std::sin(g - pi / 3.0)) - 2.0 * e * de * std::cos(0.5 * g + pi / 6.0) +
           0.5 * e * e * std::sin(0.5 * g + pi / 6.0);
  };
  auto f = [&](double g) { return std::sin(0.5 * g) - rhs(g); };
  auto phi = [&](double g) { return 2.0 * std::asin(rhs(g)); };
  auto dphi = [&](double g) {
    const double r = rhs(g);
    return 2.0 * drhs(g) / std::sqrt(1.0 - r * r);
  };
  return offset_root(f, phi, dphi, -2.0 * pi / 3.0, pi / 3.0, "airy_root");
}

double airy_root(int n) { return kappa_airy(n) + airy_root_offset(n); }

AiryEigenPair airy_pair(int n) {
  AiryEigenPair p;
  p.n = n;
  p.kappa = kappa_airy(n);
  p.gamma = airy_root_offset(n);
  p.k = p.kappa + p.gamma;
  p.lambda = p.k * p.k * p.k;
  const double k = p.k;
  const cplx i(0.0, 1.0);
  const cplx a = std::polar(1.0, 2.0 * pi / 3.0);
  const double e = std::exp(-0.5 * kSqrt3 * k);
  const cplx A0 = std::polar(1.0, -0.5 * k) * (1.0 - e * e);
  const cplx A1 = e * std::polar(1.0, k) - std::polar(1.0, -0.5 * k);
  const cplx A2 = e * std::polar(1.0, -k) - std::polar(1.0, 0.5 * k);
  std::vector<ExpPolyTerm> terms{
      {{A0}, i * k, 0.0},
      {{A1}, i * a * k, 0.0},
      {{A2}, i * a * a * k, 1.0},
  };
  p.scaled = ExpPolyFn(1.0, {0.0, 1.0}, {std::move(terms)});
  p.scaled_norm_sq = norm_sq(p.scaled);
  return p;
}

cplx airy_eigfun_scaled(const AiryEigenPair& pair, double x) { return pair.scaled.eval(x); }

double airy_norm_scaled(const AiryEigenPair& pair) { return norm_sq(pair.scaled); }

std::vector<AiryEigenPair> airy_spectrum(int n_max) {
  std::vector<AiryEigenPair> out(static_cast<std::size_t>(std::max(0, n_max)));
  parallel_for(out.size(), [&](std::size_t j) { out[j] = airy_pair(static_cast<int>(j) + 1); });
  return out;
}

std::vector<SpectrumRow> airy_spectrum_rows(int n_max) {
  std::vector<SpectrumRow> rows;
  for (const auto& p : airy_spectrum(n_max))
    rows.push_back({p.n, p.k, p.kappa, p.lambda, p.scaled_norm_sq, std::abs(airy_det_scaled(p.k))});
  return rows;
}

// ----------------------------------------------------------------- dislocation

double disloc_char(double c, double k) {
  const double f = std::exp(-2.0 * k * (1.0 - c));
  return std::tan(k * c) - (1.0 - f) / (1.0 + f);
}

double disloc_root_offset(double c, int n) {
  if (!(c > 0.0 && c < 1.0)) throw DomainError("disloc_root: c must lie in (0, 1)");
  if (n < 0) throw DomainError("disloc_root: index must be non-negative");
  if (n == 0 && !(c < 0.5)) throw DomainError("disloc_root: no low root unless c < 1/2");
  const double nu = pi * (n + 0.25) / c;
  // tan(kc) = tanh(k(1-c)) with k = nu + g is equivalent to tan(c g) = -e^{-2k(1-c)}.
  auto ex = [&](double g) { return std::exp(-2.0 * (nu + g) * (1.0 - c)); };
  auto f = [&](double g) { return std::tan(c * g) + ex(g); };
  if (n > 0) {
    auto phi = [&](double g) { return -std::atan(ex(g)) / c; };
    auto dphi = [&](double g) {
      const double e = ex(g);
      return 2.0 * (1.0 - c) * e / (c * (1.0 + e * e));
    };
    return offset_root(f, phi, dphi, -0.25 * pi / c, 0.0, "disloc_root");
  }
  auto df = [&](double g) {
    const double t = std::tan(c * g);
    return c * (1.0 + t * t) - 2.0 * (1.0 - c) * ex(g);
  };
  // Stay clear of the trivial root k = 0; the low root sits near
  // sqrt(3 (1 - 2c) / (c^3 + (1-c)^3)) when c is close to 1/2.
  const double k_est = std::sqrt(3.0 * (1.0 - 2.0 * c) / (c * c * c + std::pow(1.0 - c, 3)));
  const double lo = -nu + 1e-3 * std::min(nu, k_est);
  return bracketed_newton(f, df, lo, 0.0, "disloc_root");
}

double disloc_root(double c, int n) { return pi * (n + 0.25) / c + disloc_root_offset(c, n); }

int disloc_zero_mode_side(double b) {
  if (b == 0.5) return 0;
  return b < 0.5 ? 1 : -1;
}

namespace {

// Eigenfunction for interface c with sin(kx) on [0, c] (positive-side form).
ExpPolyFn disloc_positive_form(double c, double k) {
  const cplx i(0.0, 1.0);
  const cplx half_i = 1.0 / (2.0 * i);
  const double s = std::sin(k * c);
  const double ex = std::exp(-k * (1.0 - c));
  const double denom = 1.0 - ex * ex;
  std::vector<ExpPolyTerm> left{{{half_i}, i * k, 0.0}, {{-half_i}, -i * k, 0.0}};
  std::vector<ExpPolyTerm> right{{{s / denom}, -k, c}, {{-s * ex / denom}, k, 1.0}};
  return ExpPolyFn(1.0, {0.0, c, 1.0}, {std::move(left), std::move(right)});
}

ExpPolyFn hat_function() {
  std::vector<ExpPolyTerm> left{{{0.0, 1.0}, 0.0, 0.0}};
  std::vector<ExpPolyTerm> right{{{0.5, -1.0}, 0.0, 0.5}};
  return ExpPolyFn(1.0, {0.0, 0.5, 1.0}, {std::move(left), std::move(right)});
}

}  // namespace

DislocEigenPair disloc_pair(double b, int n) {
  if (!(b > 0.0 && b < 1.0)) throw DomainError("disloc_pair: b must lie in (0, 1)");
  DislocEigenPair p;
  p.n = n;
  p.b = b;
  if (n == 0 && b == 0.5) {
    p.c = 0.5;
    p.eigfun = hat_function();
    p.norm_sq = norm_sq(p.eigfun);
    return p;
  }
  int side = n > 0 ? 1 : -1;
  if (n == 0) side = disloc_zero_mode_side(b);
  p.c = side > 0 ? b : 1.0 - b;
  const int m = std::abs(n);
  p.nu = pi * (m + 0.25) / p.c;
  p.gamma = disloc_root_offset(p.c, m);
  p.k = p.nu + p.gamma;
  p.lambda = side * p.k * p.k;
  const double s = std::sin(p.k * p.c);
  const double a = p.k * (1.0 - p.c);
  p.B_sign = s > 0.0 ? 1 : (s < 0.0 ? -1 : 0);
  p.B_log = std::log(std::abs(s)) - a - std::log(0.5 * (-std::expm1(-2.0 * a)));
  ExpPolyFn f = disloc_positive_form(p.c, p.k);
  p.eigfun = side > 0 ? f : f.reflected();
  p.norm_sq = norm_sq(p.eigfun);
  return p;
}

double disloc_eigfun(double b, const DislocEigenPair& pair, double x) {
  if (b != pair.b) throw DomainError("disloc_eigfun: pair built for a different interface");
  return pair.eigfun.eval(x).real();
}

double disloc_norm(double b, const DislocEigenPair& pair) {
  if (b != pair.b) throw DomainError("disloc_norm: pair built for a different interface");
  return norm_sq(pair.eigfun);
}

std::vector<DislocEigenPair> disloc_spectrum(double b, int n_max) {
  const int m = std::max(0, n_max);
  std::vector<DislocEigenPair> out(static_cast<std::size_t>(2 * m + 1));
  parallel_for(out.size(), [&](std::size_t j) { out[j] = disloc_pair(b, static_cast<int>(j) - m); });
  return out;
}

std::vector<SpectrumRow> disloc_spectrum_rows(double b, int n_min, int n_max) {
  std::vector<SpectrumRow> rows;
  for (int n = n_min; n <= n_max; ++n) {
    const DislocEigenPair p = disloc_pair(b, n);
    const double res = p.k == 0.0 ? 0.0 : std::abs(disloc_char(p.c, p.k));
    rows.push_back({n, p.k, p.nu, p.lambda, p.norm_sq, res});
  }
  return rows;
}

}  // namespace revlab
