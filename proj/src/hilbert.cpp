#include "revlab/hilbert.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>

#include "revlab/errors.hpp"
#include "revlab/exp_poly.hpp"
#include "revlab/parallel.hpp"

namespace revlab {

namespace {

using std::numbers::pi;
constexpr std::size_t kResync = 256;

cplx synthesize(const FourierSeries& s, double x, cplx wp, cplx wn) {
  const double xr = wrap_periodic(x, s.period) / s.period;
  cplx acc = 0.0;
  if (wp != cplx(0.0)) acc += wp * harmonic_sum(s.pos, xr);
  if (wn != cplx(0.0)) acc += wn * harmonic_sum(s.neg, -xr);
  return acc;
}

}  // namespace

cplx harmonic_sum(std::span<const cplx> a, double turns) {
  const std::size_t n_modes = a.size();
  if (n_modes == 0) return 0.0;
  turns -= std::floor(turns);
  const cplx step = std::polar(1.0, 2.0 * pi * turns);
  std::vector<cplx> blocks;
  blocks.reserve(n_modes / kResync + 1);
  for (std::size_t start = 1; start <= n_modes; start += kResync) {
    const std::size_t stop = std::min(n_modes, start + kResync - 1);
    // Re-seed the rotation from an exact polar value at every block start.
    const double phase = std::fmod(turns * static_cast<double>(start), 1.0);
    cplx w = std::polar(1.0, 2.0 * pi * phase);
    cplx acc = 0.0;
    for (std::size_t n = start; n <= stop; ++n) {
      acc += a[n - 1] * w;
      w *= step;
    }
    blocks.push_back(acc);
  }
  return pairwise_sum(std::span<const cplx>(blocks));
}

cplx FourierSeries::coeff(int n) const {
  if (n == 0) return mean;
  const std::size_t m = static_cast<std::size_t>(std::abs(n));
  if (m > pos.size()) return 0.0;
  return n > 0 ? pos[m - 1] : neg[m - 1];
}

cplx fourier_exact(const PiecewiseFn& f, cplx mu, int n) {
  const double l = f.length();
  const cplx z = mu - cplx(0.0, 2.0 * pi * n / l);
  return integrate_exp(f, z) / l;
}

FourierSeries fourier_series(const PiecewiseFn& f, cplx mu, int modes) {
  FourierSeries s;
  s.period = f.length();
  s.mean = fourier_exact(f, mu, 0);
  const std::size_t m = static_cast<std::size_t>(std::max(0, modes));
  s.pos.resize(m);
  s.neg.resize(m);
  parallel_for(m, [&](std::size_t j) {
    const int n = static_cast<int>(j) + 1;
    s.pos[j] = fourier_exact(f, mu, n);
    s.neg[j] = fourier_exact(f, mu, -n);
  });
  return s;
}

cplx hilbert_synthesis(const FourierSeries& s, double x) {
  const cplx i(0.0, 1.0);
  return synthesize(s, x, -i, i);
}

std::vector<cplx> hilbert_synthesis(const FourierSeries& s, std::span<const double> xs) {
  std::vector<cplx> out(xs.size());
  parallel_for(xs.size(), [&](std::size_t j) { out[j] = hilbert_synthesis(s, xs[j]); });
  return out;
}

cplx analytic_projection(const FourierSeries& s, double x) { return synthesize(s, x, 1.0, 0.0); }

cplx fourier_synthesis(const FourierSeries& s, double x) { return s.mean + synthesize(s, x, 1.0, 1.0); }

double hilbert_indicator(double a, double b, double l, double x) {
  if (!(0.0 < a && a < b && b < l)) throw DomainError("hilbert_indicator: need 0 < a < b < l");
  const double da = std::abs(circular_offset(x, a, l));
  const double db = std::abs(circular_offset(x, b, l));
  if (da <= 1e-13 * l || db <= 1e-13 * l)
    throw SingularityError("hilbert_indicator: x is at an endpoint of the indicator");
  return std::log(std::abs(std::sin(pi * (x - a) / l) / std::sin(pi * (x - b) / l))) / pi;
}

cplx hilbert_pv(const PiecewiseFn& f, double l, double x) {
  if (std::abs(f.length() - l) > 1e-14 * l) throw DomainError("hilbert_pv: period mismatch");
  // Jumps of the periodic extension, including the seam at 0.
  std::vector<double> cuts;
  for (double br : f.breaks()) {
    if (br == l) continue;
    const cplx left = br == 0.0 ? f.left_limit(l) : f.left_limit(br);
    const cplx right = f.eval(br);
    const bool jump = std::abs(right - left) > 1e-13 * std::max({1.0, std::abs(left), std::abs(right)});
    const double off = circular_offset(br, x, l);
    if (jump && std::abs(off) <= 1e-10 * l)
      throw AccuracyError("hilbert_pv: x is too close to a jump");
    cuts.push_back(x + off);
  }
  const cplx fx = periodic_eval(f, 0.0, x);
  cuts.push_back(x - 0.5 * l);
  cuts.push_back(x + 0.5 * l);
  cuts.push_back(x);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  const bool real = f.is_real();
  cplx total = 0.0;
  for (std::size_t j = 0; j + 1 < cuts.size(); ++j) {
    const double lo = cuts[j], hi = cuts[j + 1];
    if (!(hi > lo) || lo < x - 0.5 * l || hi > x + 0.5 * l) continue;
    const double mid = 0.5 * (lo + hi);
    // Evaluate on the piece that owns the open interval (lo, hi).
    const double base_mid = wrap_periodic(mid, l);
    const std::size_t piece = f.piece_index(base_mid);
    const double shift = mid - base_mid;
    auto value = [&](double y) {
      const double local = y - shift - f.breaks()[piece];
      return poly::eval(f.local_coeffs(piece), local);
    };
    auto kernel = [&](double y, bool imag) {
      const double d = x - y;
      if (d == 0.0) return 0.0;
      const cplx diff = value(y) - fx;
      const double c = std::cos(pi * d / l) / std::sin(pi * d / l);
      return (imag ? diff.imag() : diff.real()) * c;
    };
    double err = 0.0;
    const double re = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
        [&](double y) { return kernel(y, false); }, lo, hi, 15, 1e-13, &err);
    double im = 0.0;
    if (!real)
      im = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
          [&](double y) { return kernel(y, true); }, lo, hi, 15, 1e-13, &err);
    total += cplx(re, im);
  }
  return total / l;
}

cplx ModulatedFn::eval(double x) const {
  const double w = wrap_periodic(x, period());
  return base_.eval(w) * std::exp(mu_ * w);
}

std::vector<Jump> ModulatedFn::jumps() const {
  std::vector<Jump> out;
  const double l = period();
  const cplx at0 = base_.eval(0.0);
  const cplx atl = base_.left_limit(l) * std::exp(mu_ * l);
  if (std::abs(at0 - atl) > 1e-13 * std::max({1.0, std::abs(at0), std::abs(atl)}))
    out.push_back({0.0, at0 - atl});
  for (const Jump& j : base_.jumps()) out.push_back({j.x, j.height * std::exp(mu_ * j.x)});
  return out;
}

cplx ModulatedFn::integral() const { return integrate_exp(base_, mu_); }

}  // namespace revlab
