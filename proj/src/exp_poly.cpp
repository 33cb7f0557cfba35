#include "revlab/exp_poly.hpp"

#include <algorithm>
#include <cmath>

#include "revlab/errors.hpp"

namespace revlab {

namespace {

constexpr double kSeriesRadius = 4.0;

// Sum_{k>=0} z^k / (k! (j+k+1)).
cplx moment_series(int j, cplx z) {
  cplx term = 1.0, acc = 0.0;
  for (int k = 0; k < 200; ++k) {
    const cplx add = term / static_cast<double>(j + k + 1);
    acc += add;
    if (std::abs(add) <= 1e-18 * std::abs(acc)) break;
    term *= z / static_cast<double>(k + 1);
  }
  return acc;
}

// e^z Sum_{k>=0} (-z)^k j! / (j+k+1)!, cancellation-free when z is mostly negative real.
cplx moment_series_decaying(int j, cplx z) {
  cplx term = 1.0 / static_cast<double>(j + 1), acc = 0.0;
  for (int k = 0; k < 200; ++k) {
    acc += term;
    if (std::abs(term) <= 1e-18 * std::abs(acc)) break;
    term *= -z / static_cast<double>(j + k + 2);
  }
  return std::exp(z) * acc;
}

std::vector<double> merged_breaks(std::span<const double> a, std::span<const double> b,
                                  double length) {
  std::vector<double> all(a.begin(), a.end());
  all.insert(all.end(), b.begin(), b.end());
  std::sort(all.begin(), all.end());
  std::vector<double> out;
  for (double x : all)
    if (out.empty() || x - out.back() > 1e-14 * length) out.push_back(x);
  out.front() = 0.0;
  out.back() = length;
  return out;
}

std::size_t locate(std::span<const double> breaks, double x) {
  auto it = std::upper_bound(breaks.begin(), breaks.end(), x);
  std::size_t j = static_cast<std::size_t>(it - breaks.begin());
  j = j == 0 ? 0 : j - 1;
  return std::min(j, breaks.size() - 2);
}

}  // namespace

cplx exp_moment(int j, cplx z) {
  if (j < 0) throw DomainError("exp_moment: negative order");
  if (std::abs(z) <= kSeriesRadius) {
    if (z.real() < 0.0 && std::abs(z.imag()) <= -z.real()) return moment_series_decaying(j, z);
    return moment_series(j, z);
  }
  const cplx ez = std::exp(z);
  cplx acc = (ez - 1.0) / z;
  for (int m = 1; m <= j; ++m) acc = (ez - static_cast<double>(m) * acc) / z;
  return acc;
}

cplx integrate_poly_exp(std::span<const cplx> p, double h, cplx z, cplx w) {
  if (p.empty() || h == 0.0) return 0.0;
  if (z.real() * h <= 0.0) {
    // Largest magnitude at s = 0.
    const cplx zh = z * h;
    cplx acc = 0.0, hp = h;
    for (std::size_t j = 0; j < p.size(); ++j, hp *= h)
      if (p[j] != cplx(0.0)) acc += p[j] * hp * exp_moment(static_cast<int>(j), zh);
    return std::exp(w) * acc;
  }
  // Largest magnitude at s = h: substitute s = h - u.
  const std::vector<cplx> q = poly::scale(poly::taylor_shift(p, h), -1.0);
  const cplx zh = -z * h;
  cplx acc = 0.0, hp = h;
  for (std::size_t j = 0; j < q.size(); ++j, hp *= h)
    if (q[j] != cplx(0.0)) acc += q[j] * hp * exp_moment(static_cast<int>(j), zh);
  return std::exp(w + z * h) * acc;
}

cplx integrate_exp(const PiecewiseFn& f, cplx z) {
  cplx acc = 0.0;
  for (std::size_t j = 0; j < f.piece_count(); ++j) {
    const double lo = f.breaks()[j], hi = f.breaks()[j + 1];
    acc += integrate_poly_exp(f.local_coeffs(j), hi - lo, z, z * lo);
  }
  return acc;
}

cplx ExpPolyTerm::eval(double x) const {
  const double s = x - anchor;
  return poly::eval(poly, s) * std::exp(rate * s);
}

cplx ExpPolyTerm::derivative(double x) const {
  const double s = x - anchor;
  cplx dp = 0.0;
  for (std::size_t m = poly.size(); m-- > 1;) dp = dp * s + static_cast<double>(m) * poly[m];
  return (dp + rate * poly::eval(poly, s)) * std::exp(rate * s);
}

ExpPolyFn::ExpPolyFn(double length, std::vector<double> breaks,
                     std::vector<std::vector<ExpPolyTerm>> pieces)
    : length_(length), breaks_(std::move(breaks)), pieces_(std::move(pieces)) {
  if (breaks_.size() < 2 || pieces_.size() + 1 != breaks_.size() || breaks_.front() != 0.0 ||
      breaks_.back() != length_)
    throw DomainError("ExpPolyFn: inconsistent breakpoints");
}

std::size_t ExpPolyFn::piece_index(double x) const {
  if (!(x >= 0.0 && x <= length_)) throw DomainError("ExpPolyFn: x outside the interval");
  return locate(breaks_, x);
}

cplx ExpPolyFn::eval(double x) const {
  cplx acc = 0.0;
  for (const auto& t : pieces_[piece_index(x)]) acc += t.eval(x);
  return acc;
}

cplx ExpPolyFn::derivative(double x) const {
  cplx acc = 0.0;
  for (const auto& t : pieces_[piece_index(x)]) acc += t.derivative(x);
  return acc;
}

ExpPolyFn ExpPolyFn::reflected() const {
  std::vector<double> breaks(breaks_.size());
  for (std::size_t j = 0; j < breaks_.size(); ++j) breaks[j] = length_ - breaks_[breaks_.size() - 1 - j];
  breaks.front() = 0.0;
  breaks.back() = length_;
  std::vector<std::vector<ExpPolyTerm>> pieces(pieces_.rbegin(), pieces_.rend());
  for (auto& piece : pieces)
    for (auto& t : piece) {
      // p(l - x - a) e^{r (l - x - a)} = p(-(x - a')) e^{-r (x - a')}, a' = l - a.
      t.poly = poly::scale(t.poly, -1.0);
      t.rate = -t.rate;
      t.anchor = length_ - t.anchor;
    }
  return ExpPolyFn(length_, std::move(breaks), std::move(pieces));
}

ExpPolyFn ExpPolyFn::conj() const {
  auto pieces = pieces_;
  for (auto& piece : pieces)
    for (auto& t : piece) {
      for (auto& v : t.poly) v = std::conj(v);
      t.rate = std::conj(t.rate);
    }
  return ExpPolyFn(length_, breaks_, std::move(pieces));
}

ExpPolyFn ExpPolyFn::operator*(cplx c) const {
  auto pieces = pieces_;
  for (auto& piece : pieces)
    for (auto& t : piece)
      for (auto& v : t.poly) v *= c;
  return ExpPolyFn(length_, breaks_, std::move(pieces));
}

cplx inner(const PiecewiseFn& f, const ExpPolyFn& g) {
  if (std::abs(f.length() - g.length()) > 1e-14 * g.length())
    throw DomainError("inner: functions on different intervals");
  const std::vector<double> br = merged_breaks(f.breaks(), g.breaks(), g.length());
  cplx acc = 0.0;
  for (std::size_t i = 0; i + 1 < br.size(); ++i) {
    const double lo = br[i], hi = br[i + 1], mid = 0.5 * (lo + hi);
    const std::size_t jf = f.piece_index(mid);
    const std::size_t jg = locate(g.breaks(), mid);
    const std::vector<cplx> pf = poly::taylor_shift(f.local_coeffs(jf), lo - f.breaks()[jf]);
    for (const auto& t : g.terms(jg)) {
      const std::vector<cplx> pg = poly::taylor_shift(poly::conj(t.poly), lo - t.anchor);
      const cplx rate = std::conj(t.rate);
      acc += integrate_poly_exp(poly::multiply(pf, pg), hi - lo, rate, rate * (lo - t.anchor));
    }
  }
  return acc;
}

cplx inner(const ExpPolyFn& f, const ExpPolyFn& g) {
  if (std::abs(f.length() - g.length()) > 1e-14 * g.length())
    throw DomainError("inner: functions on different intervals");
  const std::vector<double> br = merged_breaks(f.breaks(), g.breaks(), g.length());
  cplx acc = 0.0;
  for (std::size_t i = 0; i + 1 < br.size(); ++i) {
    const double lo = br[i], hi = br[i + 1], mid = 0.5 * (lo + hi);
    const std::size_t jf = locate(f.breaks(), mid);
    const std::size_t jg = locate(g.breaks(), mid);
    for (const auto& a : f.terms(jf)) {
      const std::vector<cplx> pa = poly::taylor_shift(a.poly, lo - a.anchor);
      for (const auto& b : g.terms(jg)) {
        const std::vector<cplx> pb = poly::taylor_shift(poly::conj(b.poly), lo - b.anchor);
        const cplx rb = std::conj(b.rate);
        acc += integrate_poly_exp(poly::multiply(pa, pb), hi - lo, a.rate + rb,
                                  a.rate * (lo - a.anchor) + rb * (lo - b.anchor));
      }
    }
  }
  return acc;
}

double norm_sq(const ExpPolyFn& f) { return inner(f, f).real(); }

double norm_sq(const PiecewiseFn& f) {
  double acc = 0.0;
  for (std::size_t j = 0; j < f.piece_count(); ++j) {
    const auto c = f.local_coeffs(j);
    const std::vector<cplx> sq = poly::multiply(c, poly::conj(c));
    const double h = f.breaks()[j + 1] - f.breaks()[j];
    acc += integrate_poly_exp(sq, h, 0.0).real();
  }
  return acc;
}

}  // namespace revlab
