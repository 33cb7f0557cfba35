#include "revlab/piecewise.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "revlab/errors.hpp"

namespace revlab {

namespace poly {

cplx eval(std::span<const cplx> c, cplx s) {
  cplx acc = 0.0;
  for (std::size_t m = c.size(); m-- > 0;) acc = acc * s + c[m];
  return acc;
}

std::vector<cplx> taylor_shift(std::span<const cplx> c, cplx d) {
  std::vector<cplx> out(c.begin(), c.end());
  if (d == cplx(0.0)) return out;
  const std::size_t n = out.size();
  // Repeated synthetic division by (s - d).
  for (std::size_t i = 0; i + 1 < n; ++i)
    for (std::size_t m = n - 1; m-- > i;) out[m] += d * out[m + 1];
  return out;
}

std::vector<cplx> scale(std::span<const cplx> c, cplx a) {
  std::vector<cplx> out(c.begin(), c.end());
  cplx f = 1.0;
  for (auto& v : out) {
    v *= f;
    f *= a;
  }
  return out;
}

std::vector<cplx> multiply(std::span<const cplx> a, std::span<const cplx> b) {
  if (a.empty() || b.empty()) return {};
  std::vector<cplx> out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

std::vector<cplx> conj(std::span<const cplx> c) {
  std::vector<cplx> out(c.size());
  std::transform(c.begin(), c.end(), out.begin(), [](cplx v) { return std::conj(v); });
  return out;
}

}  // namespace poly

namespace {

constexpr double kJumpRelTol = 1e-13;

std::vector<double> merge_breaks(std::span<const double> a, std::span<const double> b,
                                 double length) {
  std::vector<double> all(a.begin(), a.end());
  all.insert(all.end(), b.begin(), b.end());
  std::sort(all.begin(), all.end());
  std::vector<double> out;
  const double tol = 1e-14 * length;
  for (double x : all) {
    if (x < -tol || x > length + tol) continue;
    if (out.empty() || x - out.back() > tol) out.push_back(x);
  }
  if (out.empty() || out.front() != 0.0) {
    if (!out.empty() && out.front() <= tol) out.front() = 0.0;
    else out.insert(out.begin(), 0.0);
  }
  if (length - out.back() <= tol) out.back() = length;
  else out.push_back(length);
  return out;
}

}  // namespace

PiecewiseFn::PiecewiseFn(double length, std::vector<double> breaks,
                         std::vector<std::vector<cplx>> pieces)
    : length_(length), breaks_(std::move(breaks)), pieces_(std::move(pieces)) {
  validate();
}

void PiecewiseFn::validate() const {
  if (!(length_ > 0.0) || !std::isfinite(length_))
    throw DomainError("PiecewiseFn: length must be positive and finite");
  if (breaks_.size() < 2) throw DomainError("PiecewiseFn: need at least two breakpoints");
  if (breaks_.front() != 0.0 || breaks_.back() != length_)
    throw DomainError("PiecewiseFn: breakpoints must start at 0 and end at the length");
  for (std::size_t j = 1; j < breaks_.size(); ++j)
    if (!(breaks_[j] > breaks_[j - 1]))
      throw DomainError("PiecewiseFn: breakpoints must be strictly increasing");
  if (pieces_.size() + 1 != breaks_.size())
    throw DomainError("PiecewiseFn: piece count must equal breakpoint count minus one");
  for (const auto& p : pieces_) {
    if (p.empty()) throw DomainError("PiecewiseFn: empty coefficient list");
    if (p.size() > static_cast<std::size_t>(kMaxDegree) + 1)
      throw DomainError("PiecewiseFn: polynomial degree exceeds the supported maximum");
    for (cplx c : p)
      if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
        throw DomainError("PiecewiseFn: non-finite coefficient");
  }
}

PiecewiseFn PiecewiseFn::from_global(double length, std::vector<double> breaks,
                                     const std::vector<std::vector<cplx>>& pieces) {
  if (pieces.size() + 1 != breaks.size())
    throw DomainError("PiecewiseFn: piece count must equal breakpoint count minus one");
  std::vector<std::vector<cplx>> local;
  local.reserve(pieces.size());
  for (std::size_t j = 0; j < pieces.size(); ++j)
    local.push_back(poly::taylor_shift(pieces[j], breaks[j]));
  return PiecewiseFn(length, std::move(breaks), std::move(local));
}

PiecewiseFn PiecewiseFn::from_local(double length, std::vector<double> breaks,
                                    std::vector<std::vector<cplx>> pieces) {
  return PiecewiseFn(length, std::move(breaks), std::move(pieces));
}

PiecewiseFn PiecewiseFn::constant(double length, cplx value) {
  return PiecewiseFn(length, {0.0, length}, {{value}});
}

PiecewiseFn PiecewiseFn::steps(double length, std::vector<double> breaks,
                               const std::vector<cplx>& values) {
  std::vector<std::vector<cplx>> pieces;
  for (cplx v : values) pieces.push_back({v});
  return PiecewiseFn(length, std::move(breaks), std::move(pieces));
}

PiecewiseFn PiecewiseFn::interpolate(const std::function<cplx(double)>& f, double length,
                                     int pieces, int degree) {
  if (pieces < 1 || degree < 0 || degree > kMaxDegree)
    throw DomainError("PiecewiseFn::interpolate: bad piece count or degree");
  const int m = degree + 1;
  std::vector<double> breaks(pieces + 1);
  for (int j = 0; j <= pieces; ++j) breaks[j] = length * j / pieces;
  breaks.back() = length;
  std::vector<std::vector<cplx>> coeffs;
  for (int j = 0; j < pieces; ++j) {
    const double lo = breaks[j], h = breaks[j + 1] - lo;
    // Chebyshev coefficients from values at first-kind nodes.
    std::vector<cplx> vals(m);
    for (int i = 0; i < m; ++i) {
      const double t = std::cos(std::numbers::pi * (i + 0.5) / m);
      vals[i] = f(lo + 0.5 * h * (t + 1.0));
    }
    std::vector<cplx> cheb(m, 0.0);
    for (int r = 0; r < m; ++r) {
      cplx acc = 0.0;
      for (int i = 0; i < m; ++i) acc += vals[i] * std::cos(std::numbers::pi * r * (i + 0.5) / m);
      cheb[r] = acc * (r == 0 ? 1.0 : 2.0) / static_cast<double>(m);
    }
    // Chebyshev -> monomials in t via the three-term recurrence.
    std::vector<std::vector<double>> basis(m, std::vector<double>(m, 0.0));
    basis[0][0] = 1.0;
    if (m > 1) basis[1][1] = 1.0;
    for (int r = 2; r < m; ++r)
      for (int i = 0; i < m; ++i)
        basis[r][i] = (i > 0 ? 2.0 * basis[r - 1][i - 1] : 0.0) - basis[r - 2][i];
    std::vector<cplx> mono(m, 0.0);
    for (int r = 0; r < m; ++r)
      for (int i = 0; i < m; ++i) mono[i] += cheb[r] * basis[r][i];
    // t = 2s/h - 1 with s the local variable.
    coeffs.push_back(poly::scale(poly::taylor_shift(mono, -1.0), 2.0 / h));
  }
  return PiecewiseFn(length, std::move(breaks), std::move(coeffs));
}

std::vector<cplx> PiecewiseFn::global_coeffs(std::size_t j) const {
  return poly::taylor_shift(pieces_.at(j), -breaks_.at(j));
}

bool PiecewiseFn::is_real() const {
  for (const auto& p : pieces_)
    for (cplx c : p)
      if (c.imag() != 0.0) return false;
  return true;
}

int PiecewiseFn::degree() const {
  std::size_t d = 0;
  for (const auto& p : pieces_) d = std::max(d, p.size() - 1);
  return static_cast<int>(d);
}

std::size_t PiecewiseFn::piece_index(double x) const {
  if (!(x >= 0.0 && x <= length_)) {
    std::ostringstream os;
    os << "PiecewiseFn: x = " << x << " outside [0, " << length_ << "]";
    throw DomainError(os.str());
  }
  if (x == length_) return pieces_.size() - 1;
  auto it = std::upper_bound(breaks_.begin(), breaks_.end(), x);
  return static_cast<std::size_t>(it - breaks_.begin()) - 1;
}

cplx PiecewiseFn::eval_piece(std::size_t j, double x) const {
  return poly::eval(pieces_[j], x - breaks_[j]);
}

cplx PiecewiseFn::eval(double x) const { return eval_piece(piece_index(x), x); }

cplx PiecewiseFn::left_limit(double x) const {
  if (x == 0.0) return eval(0.0);
  if (!(x > 0.0 && x <= length_)) return eval(x);  // throws
  auto it = std::lower_bound(breaks_.begin(), breaks_.end(), x);
  return eval_piece(static_cast<std::size_t>(it - breaks_.begin()) - 1, x);
}

cplx PiecewiseFn::right_limit(double x) const { return eval(x); }

std::vector<Jump> PiecewiseFn::jumps() const {
  std::vector<Jump> out;
  for (std::size_t j = 1; j + 1 < breaks_.size(); ++j) {
    const double x = breaks_[j];
    const cplx right = eval_piece(j, x), left = eval_piece(j - 1, x);
    const double scale = std::max({1.0, std::abs(right), std::abs(left)});
    if (std::abs(right - left) > kJumpRelTol * scale) out.push_back({x, right - left});
  }
  return out;
}

PiecewiseFn PiecewiseFn::pullback(double scale, double shift, double new_length) const {
  if (scale == 0.0 || !(new_length > 0.0)) throw DomainError("pullback: degenerate map");
  const double a = std::min(shift, scale * new_length + shift);
  const double b = std::max(shift, scale * new_length + shift);
  const double tol = 1e-12 * length_;
  if (a < -tol || b > length_ + tol) throw DomainError("pullback: image leaves the domain");
  std::vector<double> mapped;
  for (std::size_t j = 1; j + 1 < breaks_.size(); ++j) {
    const double y = (breaks_[j] - shift) / scale;
    if (y > 0.0 && y < new_length) mapped.push_back(y);
  }
  std::vector<double> nb = merge_breaks(mapped, {}, new_length);
  std::vector<std::vector<cplx>> pieces;
  pieces.reserve(nb.size() - 1);
  for (std::size_t i = 0; i + 1 < nb.size(); ++i) {
    const double mid = std::clamp(scale * 0.5 * (nb[i] + nb[i + 1]) + shift, 0.0, length_);
    const std::size_t j = piece_index(mid);
    const double d = scale * nb[i] + shift - breaks_[j];
    pieces.push_back(poly::scale(poly::taylor_shift(pieces_[j], d), scale));
  }
  return PiecewiseFn(new_length, std::move(nb), std::move(pieces));
}

PiecewiseFn PiecewiseFn::reflected() const { return pullback(-1.0, length_, length_); }

PiecewiseFn PiecewiseFn::operator+(cplx c) const {
  auto pieces = pieces_;
  for (auto& p : pieces) p[0] += c;
  return PiecewiseFn(length_, breaks_, std::move(pieces));
}

PiecewiseFn PiecewiseFn::operator*(cplx c) const {
  auto pieces = pieces_;
  for (auto& p : pieces)
    for (auto& v : p) v *= c;
  return PiecewiseFn(length_, breaks_, std::move(pieces));
}

PiecewiseFn PiecewiseFn::operator+(const PiecewiseFn& other) const {
  if (std::abs(other.length_ - length_) > 1e-14 * length_)
    throw DomainError("PiecewiseFn: sum of functions on different intervals");
  const PiecewiseFn a = refined(other.breaks_);
  const PiecewiseFn b = other.refined(a.breaks_);
  std::vector<std::vector<cplx>> pieces;
  for (std::size_t j = 0; j < a.pieces_.size(); ++j) {
    std::vector<cplx> s(std::max(a.pieces_[j].size(), b.pieces_[j].size()), 0.0);
    for (std::size_t m = 0; m < a.pieces_[j].size(); ++m) s[m] += a.pieces_[j][m];
    for (std::size_t m = 0; m < b.pieces_[j].size(); ++m) s[m] += b.pieces_[j][m];
    pieces.push_back(std::move(s));
  }
  return PiecewiseFn(length_, a.breaks_, std::move(pieces));
}

PiecewiseFn PiecewiseFn::concat(const PiecewiseFn& right) const {
  auto breaks = breaks_;
  auto pieces = pieces_;
  const double total = length_ + right.length_;
  for (std::size_t j = 1; j < right.breaks_.size(); ++j) breaks.push_back(length_ + right.breaks_[j]);
  breaks.back() = total;
  pieces.insert(pieces.end(), right.pieces_.begin(), right.pieces_.end());
  return PiecewiseFn(total, std::move(breaks), std::move(pieces));
}

PiecewiseFn PiecewiseFn::refined(std::span<const double> extra) const {
  std::vector<double> nb = merge_breaks(breaks_, extra, length_);
  // Keep our own breakpoints bit-exact.
  for (double& x : nb) {
    auto it = std::lower_bound(breaks_.begin(), breaks_.end(), x - 1e-14 * length_);
    if (it != breaks_.end() && std::abs(*it - x) <= 1e-14 * length_) x = *it;
  }
  std::vector<std::vector<cplx>> pieces;
  for (std::size_t i = 0; i + 1 < nb.size(); ++i) {
    const std::size_t j = piece_index(0.5 * (nb[i] + nb[i + 1]));
    pieces.push_back(poly::taylor_shift(pieces_[j], nb[i] - breaks_[j]));
  }
  return PiecewiseFn(length_, std::move(nb), std::move(pieces));
}

Decomposition decompose(const PiecewiseFn& f) {
  Decomposition out;
  out.jumps = f.jumps();
  std::vector<double> breaks(f.breaks().begin(), f.breaks().end());
  std::vector<std::vector<cplx>> pieces;
  pieces.emplace_back(f.local_coeffs(0).begin(), f.local_coeffs(0).end());
  for (std::size_t j = 1; j < f.piece_count(); ++j) {
    std::vector<cplx> p(f.local_coeffs(j).begin(), f.local_coeffs(j).end());
    // Pin the constant term to the previous piece's end value: exact continuity.
    p[0] = poly::eval(pieces.back(), breaks[j] - breaks[j - 1]);
    pieces.push_back(std::move(p));
  }
  out.ac = PiecewiseFn::from_local(f.length(), std::move(breaks), std::move(pieces));
  return out;
}

double wrap_periodic(double x, double period) {
  double w = x - period * std::floor(x / period);
  if (w >= period - 1e-15 * period || w < 0.0) w = 0.0;
  return w;
}

double circular_offset(double x, double y, double period) {
  return wrap_periodic(x - y + 0.5 * period, period) - 0.5 * period;
}

PeriodicPoint PeriodicPoint::make(double raw, double period) {
  if (!(period > 0.0)) throw DomainError("PeriodicPoint: period must be positive");
  return {raw, period, wrap_periodic(raw, period)};
}

cplx periodic_eval(const PiecewiseFn& f, double shift, double x) {
  return f.eval(wrap_periodic(x - shift, f.length()));
}

}  // namespace revlab
