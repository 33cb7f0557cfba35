#include "revlab/airy_revival.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "revlab/errors.hpp"
#include "revlab/exp_poly.hpp"
#include "revlab/parallel.hpp"

namespace revlab {

namespace {

using std::numbers::pi;
constexpr long double kPiL = 3.141592653589793238462643383279502884L;
constexpr double kNegligibleD = 1e-12;

long long mod_pos(__int128 a, long long m) {
  __int128 r = a % m;
  if (r < 0) r += m;
  return static_cast<long long>(r);
}

double wrap_two_pi(long double phase) {
  long double r = std::fmod(phase, 2.0L * kPiL);
  if (r < 0) r += 2.0L * kPiL;
  return static_cast<double>(r);
}

// k_n^3 t modulo 2 pi, with the kappa_n part exact for rational times.
double airy_phase_root(const AiryEigenPair& p, const AiryTime& t) {
  const long double g = p.gamma, kap = p.kappa;
  const long double rest = g * (3.0L * kap * kap + 3.0L * kap * g + g * g) * static_cast<long double>(t.t);
  if (t.rational) return wrap_two_pi(static_cast<long double>(airy_phase_kappa(p.n, t)) + rest);
  const long double k = kap + g;
  return wrap_two_pi(k * k * k * static_cast<long double>(t.t));
}

}  // namespace

AiryRationalTime AiryRationalTime::make(long long p, long long q) {
  if (p < 1 || q < 1) throw DomainError("rational time: p and q must be positive");
  if (std::gcd(p, q) != 1) throw DomainError("rational time: p and q must be coprime");
  return {p, q};
}

double AiryRationalTime::t() const {
  return static_cast<double>(p) / (static_cast<double>(q) * pi * pi);
}

void require_real_unit(const PiecewiseFn& u0) {
  if (u0.length() != 1.0) throw DomainError("initial datum must live on [0, 1]");
  if (!u0.is_real()) throw DomainError("initial datum must be real for the third-order problem");
}

cplx u0_tilde(const PiecewiseFn& u0, int n) {
  require_real_unit(u0);
  if (n < 1) throw DomainError("u0_tilde: index must be >= 1");
  const cplx c = u0.eval(1.0) + u0.eval(0.0);
  const double kap = (2.0 * n - 1.0 / 3.0) * pi;
  return integrate_exp(u0 + c, cplx(0.0, -kap));
}

double airy_phase_kappa(int n, const AiryTime& t) {
  if (t.rational) {
    // kappa_n^3 p / (q pi^2) = pi (6n - 1)^3 p / (27 q).
    const long long p = t.rational->p, q = t.rational->q;
    const __int128 m = 6 * static_cast<__int128>(n) - 1;
    const long long r = mod_pos(m * m * m * p, 54 * q);
    return pi * static_cast<double>(r) / (27.0 * static_cast<double>(q));
  }
  const long double kap = (2.0L * n - 1.0L / 3.0L) * kPiL;
  return wrap_two_pi(kap * kap * kap * static_cast<long double>(t.t));
}

// ------------------------------------------------------------------- solver

AirySolver::AirySolver(const PiecewiseFn& u0, int modes) : u0_(u0) {
  require_real_unit(u0);
  if (modes < 1) throw DomainError("AirySolver: need at least one mode");
  pairs_ = airy_spectrum(modes);
  coeffs_.resize(pairs_.size());
  tilde_.resize(pairs_.size());
  parallel_for(pairs_.size(), [&](std::size_t j) {
    coeffs_[j] = inner(u0_, pairs_[j].scaled) / pairs_[j].scaled_norm_sq;
    tilde_[j] = u0_tilde(u0_, pairs_[j].n);
  });
}

namespace {

std::vector<cplx> rotated(std::span<const cplx> c, const std::vector<double>& phase) {
  std::vector<cplx> out(c.size());
  for (std::size_t j = 0; j < c.size(); ++j) out[j] = c[j] * std::polar(1.0, phase[j]);
  return out;
}

double solve_at(const std::vector<AiryEigenPair>& pairs, const std::vector<cplx>& a, double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError("solve_series: x outside [0, 1]");
  std::vector<double> terms(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) terms[j] = 2.0 * (a[j] * pairs[j].scaled.eval(x)).real();
  return pairwise_sum(std::span<const double>(terms));
}

double ur_at(const std::vector<cplx>& b, double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError("ur_series: x outside [0, 1]");
  return 2.0 * (std::polar(1.0, -pi * x / 3.0) * harmonic_sum(b, x)).real();
}

}  // namespace

std::vector<double> AirySolver::solve(std::span<const double> xs, const AiryTime& t) const {
  std::vector<double> phase(pairs_.size());
  for (std::size_t j = 0; j < pairs_.size(); ++j) phase[j] = airy_phase_root(pairs_[j], t);
  const std::vector<cplx> a = rotated(coeffs_, phase);
  std::vector<double> out(xs.size());
  parallel_for(xs.size(), [&](std::size_t i) { out[i] = solve_at(pairs_, a, xs[i]); });
  return out;
}

std::vector<double> AirySolver::ur(std::span<const double> xs, const AiryTime& t) const {
  std::vector<double> phase(pairs_.size());
  for (std::size_t j = 0; j < pairs_.size(); ++j) phase[j] = airy_phase_kappa(pairs_[j].n, t);
  const std::vector<cplx> b = rotated(tilde_, phase);
  std::vector<double> out(xs.size());
  parallel_for(xs.size(), [&](std::size_t i) { out[i] = ur_at(b, xs[i]); });
  return out;
}

double AirySolver::solve(double x, const AiryTime& t) const { return solve(std::span<const double>(&x, 1), t)[0]; }

double AirySolver::ur(double x, const AiryTime& t) const { return ur(std::span<const double>(&x, 1), t)[0]; }

double AirySolver::truncation_error_sq() const {
  std::vector<double> e(pairs_.size());
  for (std::size_t j = 0; j < pairs_.size(); ++j) e[j] = 2.0 * std::norm(coeffs_[j]) * pairs_[j].scaled_norm_sq;
  return norm_sq(u0_) - pairwise_sum(std::span<const double>(e));
}

double solve_series(const PiecewiseFn& u0, double x, const AiryTime& t, int modes) {
  return AirySolver(u0, modes).solve(x, t);
}

double ur_series(const PiecewiseFn& u0, double x, const AiryTime& t, int modes) {
  return AirySolver(u0, modes).ur(x, t);
}

double uc(const PiecewiseFn& u0, double x, const AiryTime& t, int modes) {
  return AirySolver(u0, modes).uc(x, t);
}

// -------------------------------------------------------------- closed form

cplx dk_airy(long long p, long long q, long long k) {
  if (q < 1 || p < 1 || std::gcd(p, q) != 1) throw DomainError("dk_airy: p, q must be coprime positive");
  if (k < 0 || k >= q) throw DomainError("dk_airy: k must lie in [0, q)");
  cplx acc = 0.0;
  for (long long m = 0; m < q; ++m) {
    const __int128 mm = m;
    const long long r = mod_pos(mm * k + (4 * mm * mm * mm - 2 * mm * mm) * p, q);
    acc += std::polar(1.0, 2.0 * pi * static_cast<double>(r) / static_cast<double>(q));
  }
  return acc / static_cast<double>(q);
}

ModulatedFn g_u0_function(const PiecewiseFn& u0) {
  require_real_unit(u0);
  return ModulatedFn(u0 + (u0.eval(1.0) + u0.eval(0.0)), cplx(0.0, pi / 3.0));
}

cplx g_u0(const PiecewiseFn& u0, double x) { return g_u0_function(u0).eval(x); }

AiryClosedForm::AiryClosedForm(const PiecewiseFn& u0, AiryRationalTime rt, int hilbert_modes, double delta)
    : rt_(AiryRationalTime::make(rt.p, rt.q)), g_(g_u0_function(u0)), delta_(delta) {
  if (!(delta > 0.0)) throw DomainError("AiryClosedForm: delta must be positive");
  series_ = g_.series(hilbert_modes);
  L3_ = g_.integral();
  for (long long k = 0; k < rt_.q; ++k) d_.push_back(dk_airy(rt_.p, rt_.q, k));
  const double pq = static_cast<double>(rt_.p) / static_cast<double>(rt_.q);
  const double qd = static_cast<double>(rt_.q);
  std::vector<SingularPoint> pts;
  for (long long k = 0; k < rt_.q; ++k) {
    if (std::abs(d_[k]) <= kNegligibleD) continue;
    for (const Jump& j : g_.jumps()) {
      const double x = wrap_periodic(j.x - pq / 3.0 + static_cast<double>(k) / qd, 1.0);
      const cplx P = std::polar(1.0, -pi * (9.0 * x + pq) / 27.0);
      const cplx a = P * d_[k] * j.height;
      SingularPoint sp;
      sp.x = x;
      sp.predicted_jump = a.real();
      sp.predicted_cusp = -(cplx(0.0, 1.0) * a).real() / pi;
      sp.ks = {static_cast<int>(k)};
      pts.push_back(sp);
    }
  }
  singular_ = merge_singular_points(std::move(pts), 1e-12);
}

double AiryClosedForm::distance_to_singular(double x) const { return distance_to_set(x, singular_, 1.0); }

AiryClosedForm::Parts AiryClosedForm::parts_unchecked(double x) const {
  const double pq = static_cast<double>(rt_.p) / static_cast<double>(rt_.q);
  Parts out;
  for (long long k = 0; k < rt_.q; ++k) {
    if (d_[k] == cplx(0.0)) continue;
    const double y = x + pq / 3.0 - static_cast<double>(k) / static_cast<double>(rt_.q);
    out.L1 += d_[k] * g_.eval(y);
    out.L2 += d_[k] * hilbert_synthesis(series_, y);
  }
  out.L3 = L3_;
  const cplx P = std::polar(1.0, -pi * (9.0 * x + pq) / 27.0);
  out.value = (P * (out.L1 + cplx(0.0, 1.0) * out.L2 - out.L3)).real();
  return out;
}

AiryClosedForm::Parts AiryClosedForm::parts(double x) const {
  if (!(x > 0.0 && x < 1.0)) throw DomainError("ur_closed: x must lie in (0, 1)");
  if (distance_to_singular(x) < delta_)
    throw SingularityError("ur_closed: x is within delta of a singular abscissa");
  return parts_unchecked(x);
}

double ur_closed(const PiecewiseFn& u0, double x, AiryRationalTime rt, int hilbert_modes, double delta) {
  return AiryClosedForm(u0, rt, hilbert_modes, delta).eval(x);
}

AiryRevivalParts airy_revival(const PiecewiseFn& u0, AiryRationalTime rt, int modes, int grid,
                              int hilbert_modes, double delta) {
  if (grid < 1) throw DomainError("airy_revival: grid must be positive");
  AiryRevivalParts out;
  out.grid.resize(grid);
  for (int j = 0; j < grid; ++j) out.grid[j] = (j + 0.5) / grid;
  const AirySolver solver(u0, modes);
  const AiryClosedForm closed(u0, rt, hilbert_modes, delta);
  out.u = solver.solve(out.grid, rt);
  out.ur_series = solver.ur(out.grid, rt);
  out.uc.resize(grid);
  for (int j = 0; j < grid; ++j) out.uc[j] = out.u[j] - out.ur_series[j];
  const double nan = std::numeric_limits<double>::quiet_NaN();
  out.ur_closed.assign(grid, nan);
  out.L1.assign(grid, cplx(nan, nan));
  out.L2.assign(grid, cplx(nan, nan));
  out.excluded.assign(grid, 0);
  out.L3 = closed.g().integral();
  parallel_for(static_cast<std::size_t>(grid), [&](std::size_t j) {
    if (closed.distance_to_singular(out.grid[j]) < delta) {
      out.excluded[j] = 1;
      return;
    }
    const auto p = closed.parts_unchecked(out.grid[j]);
    out.ur_closed[j] = p.value;
    out.L1[j] = p.L1;
    out.L2[j] = p.L2;
  });
  double sq = 0.0;
  for (int j = 0; j < grid; ++j) {
    if (out.excluded[j]) {
      ++out.excluded_count;
      continue;
    }
    const double e = std::abs(out.ur_closed[j] - out.ur_series[j]);
    out.sup_err = std::max(out.sup_err, e);
    sq += e * e;
  }
  out.l2_err = std::sqrt(sq / grid);
  return out;
}

}  // namespace revlab
