#include "revlab/dislocation_revival.hpp"

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

long double wrap_two_pi(long double phase) {
  long double r = std::fmod(phase, 2.0L * kPiL);
  if (r < 0) r += 2.0L * kPiL;
  return r;
}

void check_b(double b) {
  if (!(b > 0.0 && b < 1.0)) throw DomainError("dislocation: b must lie in (0, 1)");
}

// nu^2 t modulo 2 pi with nu = pi (m + 1/4) / c. Exact when the rational time
// belongs to the side of length c (positive_side: c = b).
long double nu_sq_t(double c, int m, bool positive_side, const DislocTime& t) {
  if (t.rational) {
    const auto& rt = *t.rational;
    const bool left = rt.side == Side::left;
    if (left == positive_side) {
      // (pi (m + 1/4) / c)^2 * (+-) 2 c^2 p / (pi q) = +- 2 pi p (4m + 1)^2 / (16 q).
      const __int128 a = 4 * static_cast<__int128>(m) + 1;
      const long long r = mod_pos(a * a * rt.p, 16 * rt.q);
      const long double ph = kPiL * static_cast<long double>(r) / (8.0L * static_cast<long double>(rt.q));
      return left ? ph : wrap_two_pi(-ph);
    }
  }
  const long double nu = kPiL * (static_cast<long double>(m) + 0.25L) / static_cast<long double>(c);
  return wrap_two_pi(nu * nu * static_cast<long double>(t.t));
}

// lambda_n t modulo 2 pi.
double lambda_t(const DislocEigenPair& p, const DislocTime& t) {
  if (p.lambda == 0.0) return 0.0;
  const bool positive_side = p.lambda > 0.0;
  const long double nu = p.nu, g = p.gamma;
  const long double k2t = nu_sq_t(p.c, std::abs(p.n), positive_side, t) +
                          (2.0L * nu * g + g * g) * static_cast<long double>(t.t);
  return static_cast<double>(wrap_two_pi(positive_side ? k2t : -k2t));
}

std::vector<cplx> tilde_dis(const PiecewiseFn& u0, double b, int modes) {
  std::vector<cplx> out(static_cast<std::size_t>(std::max(0, modes)));
  parallel_for(out.size(), [&](std::size_t j) { out[j] = u0_tilde_dis(u0, b, static_cast<int>(j) + 1); });
  return out;
}

std::vector<cplx> ur_weights(const std::vector<cplx>& tilde, double b, const DislocTime& t) {
  std::vector<cplx> a(tilde.size());
  for (std::size_t j = 0; j < tilde.size(); ++j)
    a[j] = tilde[j] * std::polar(1.0, -static_cast<double>(nu_sq_t(b, static_cast<int>(j) + 1, true, t)));
  return a;
}

// sum_n a_n sin(pi (n + 1/4) x / b).
cplx ur_at(const std::vector<cplx>& a, double b, double x) {
  const double turns = x / (2.0 * b);
  const cplx ep = std::polar(1.0, pi * x / (4.0 * b));
  return (ep * harmonic_sum(a, turns) - std::conj(ep) * harmonic_sum(a, -turns)) / cplx(0.0, 2.0);
}

}  // namespace

DislocRationalTime DislocRationalTime::make(long long p, long long q, Side side) {
  if (p < 1 || q < 1) throw DomainError("rational time: p and q must be positive");
  if (std::gcd(p, q) != 1) throw DomainError("rational time: p and q must be coprime");
  return {p, q, side};
}

double DislocRationalTime::t(double b) const {
  const double c = side == Side::left ? b : 1.0 - b;
  const double mag = 2.0 * c * c * static_cast<double>(p) / (pi * static_cast<double>(q));
  return side == Side::left ? mag : -mag;
}

cplx u0_tilde_dis(const PiecewiseFn& u0, double b, int n) {
  check_b(b);
  if (u0.length() != 1.0) throw DomainError("u0_tilde_dis: initial datum must live on [0, 1]");
  if (n < 1) throw DomainError("u0_tilde_dis: index must be >= 1");
  const PiecewiseFn scaled = u0.pullback(b, 0.0, 1.0);
  const double w = pi * (n + 0.25);
  const cplx ip = integrate_exp(scaled, cplx(0.0, w));
  const cplx im = integrate_exp(scaled, cplx(0.0, -w));
  const cplx sin_part = (ip - im) / cplx(0.0, 2.0);
  const cplx cos_part = u0.eval(b) * std::sin(w) / w;
  return 2.0 * (sin_part + cos_part);
}

// ------------------------------------------------------------------- solver

DislocSolver::DislocSolver(const PiecewiseFn& u0, double b, int modes) : u0_(u0), b_(b), modes_(modes) {
  check_b(b);
  if (u0.length() != 1.0) throw DomainError("DislocSolver: initial datum must live on [0, 1]");
  if (modes < 1) throw DomainError("DislocSolver: need at least one mode");
  pairs_ = disloc_spectrum(b, modes);
  coeffs_.resize(pairs_.size());
  parallel_for(pairs_.size(), [&](std::size_t j) { coeffs_[j] = inner(u0_, pairs_[j].eigfun) / pairs_[j].norm_sq; });
  tilde_ = tilde_dis(u0_, b_, modes_);
}

std::vector<cplx> DislocSolver::solve(std::span<const double> xs, const DislocTime& t) const {
  std::vector<cplx> a(pairs_.size());
  for (std::size_t j = 0; j < pairs_.size(); ++j) a[j] = coeffs_[j] * std::polar(1.0, -lambda_t(pairs_[j], t));
  std::vector<cplx> out(xs.size());
  parallel_for(xs.size(), [&](std::size_t i) {
    const double x = xs[i];
    if (!(x >= 0.0 && x <= 1.0)) throw DomainError("solve_series_dis: x outside [0, 1]");
    std::vector<cplx> terms(a.size());
    for (std::size_t j = 0; j < a.size(); ++j) terms[j] = a[j] * pairs_[j].eigfun.eval(x);
    out[i] = pairwise_sum(std::span<const cplx>(terms));
  });
  return out;
}

std::vector<cplx> DislocSolver::ur(std::span<const double> xs, const DislocTime& t) const {
  const std::vector<cplx> a = ur_weights(tilde_, b_, t);
  std::vector<cplx> out(xs.size());
  parallel_for(xs.size(), [&](std::size_t i) { out[i] = ur_at(a, b_, xs[i]); });
  return out;
}

cplx DislocSolver::solve(double x, const DislocTime& t) const { return solve(std::span<const double>(&x, 1), t)[0]; }

cplx DislocSolver::ur(double x, const DislocTime& t) const { return ur(std::span<const double>(&x, 1), t)[0]; }

double DislocSolver::energy() const {
  std::vector<double> e(pairs_.size());
  for (std::size_t j = 0; j < pairs_.size(); ++j) e[j] = std::norm(coeffs_[j]) * pairs_[j].norm_sq;
  return pairwise_sum(std::span<const double>(e));
}

cplx solve_series_dis(const PiecewiseFn& u0, double b, double x, const DislocTime& t, int modes) {
  return DislocSolver(u0, b, modes).solve(x, t);
}

cplx ur_series_dis(const PiecewiseFn& u0, double b, double x, const DislocTime& t, int modes) {
  return ur_series_dis(u0, b, std::span<const double>(&x, 1), t, modes)[0];
}

std::vector<cplx> ur_series_dis(const PiecewiseFn& u0, double b, std::span<const double> xs, const DislocTime& t,
                                int modes) {
  check_b(b);
  for (double x : xs)
    if (!(x > 0.0 && x < b)) throw DomainError("ur_series_dis: x must lie in (0, b)");
  const std::vector<cplx> a = ur_weights(tilde_dis(u0, b, modes), b, t);
  std::vector<cplx> out(xs.size());
  parallel_for(xs.size(), [&](std::size_t i) { out[i] = ur_at(a, b, xs[i]); });
  return out;
}

std::vector<cplx> ur_series_dis_right(const PiecewiseFn& u0, double b, std::span<const double> xs,
                                      const DislocTime& t, int modes) {
  check_b(b);
  const auto [ru0, rb] = reflect_problem(u0, b);
  DislocTime rt(-t.t);
  if (t.rational) {
    DislocRationalTime flipped = *t.rational;
    flipped.side = flipped.side == Side::left ? Side::right : Side::left;
    rt = DislocTime(flipped, rb);
  }
  std::vector<double> ys(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!(xs[i] > b && xs[i] < 1.0)) throw DomainError("ur_series_dis_right: x must lie in (b, 1)");
    ys[i] = 1.0 - xs[i];
  }
  return ur_series_dis(ru0, rb, ys, rt, modes);
}

// -------------------------------------------------------------- closed form

cplx dk_dis(long long p, long long q, long long k) {
  if (q < 1 || p < 1 || std::gcd(p, q) != 1) throw DomainError("dk_dis: p, q must be coprime positive");
  if (k < 0 || k >= 2 * q) throw DomainError("dk_dis: k must lie in [0, 2q)");
  cplx acc = 0.0;
  for (long long m = 0; m < 2 * q; ++m) {
    const __int128 a = 4 * static_cast<__int128>(m) + 1;
    // (m + 1/4)^2 2 pi p / q = 2 pi (4m + 1)^2 p / (16 q);  pi m k / q = 2 pi (m k) / (2 q).
    const long long r1 = mod_pos(a * a * p, 16 * q);
    const long long r2 = mod_pos(static_cast<__int128>(m) * k, 2 * q);
    const double turns = static_cast<double>(8 * r2 - r1) / static_cast<double>(16 * q);
    acc += std::polar(1.0, 2.0 * pi * turns);
  }
  return acc / static_cast<double>(2 * q);
}

GbFunction g_u0_b(const PiecewiseFn& u0, double b) {
  check_b(b);
  if (u0.length() != 1.0) throw DomainError("g_u0_b: initial datum must live on [0, 1]");
  const cplx i(0.0, 1.0);
  const cplx ub = u0.eval(b);
  const PiecewiseFn first = u0.pullback(b, 0.0, 1.0) * i + ub;
  const PiecewiseFn second = u0.pullback(-b, b, 1.0) + i * ub;
  GbFunction out;
  out.b = b;
  out.base = first.concat(second);
  out.g = ModulatedFn(out.base, cplx(0.0, -pi / 4.0));
  return out;
}

std::pair<PiecewiseFn, double> reflect_problem(const PiecewiseFn& u0, double b) {
  check_b(b);
  return {u0.reflected(), 1.0 - b};
}

DislocClosedForm::DislocClosedForm(const PiecewiseFn& u0, double b, DislocRationalTime rt, int hilbert_modes,
                                   double delta)
    : b_(b), side_(rt.side), rt_(DislocRationalTime::make(rt.p, rt.q, rt.side)), delta_(delta) {
  check_b(b);
  if (!(delta > 0.0)) throw DomainError("DislocClosedForm: delta must be positive");
  if (side_ == Side::left) {
    c_ = b;
    gb_ = g_u0_b(u0, b);
  } else {
    const auto [ru0, rb] = reflect_problem(u0, b);
    c_ = rb;
    gb_ = g_u0_b(ru0, rb);
  }
  series_ = gb_.g.series(hilbert_modes);
  for (long long k = 0; k < 2 * rt_.q; ++k) d_.push_back(dk_dis(rt_.p, rt_.q, k));
  cplx sum_d = 0.0;
  for (cplx d : d_) sum_d += d;
  l3_const_ = -0.5 * gb_.g.integral() * sum_d;

  // Singular abscissae in the coordinate y of the left problem on (0, c).
  const double qd = static_cast<double>(rt_.q);
  const double tol = 1e-12;
  std::vector<SingularPoint> pts;
  for (long long k = 0; k < 2 * rt_.q; ++k) {
    if (std::abs(d_[k]) <= kNegligibleD) continue;
    for (const Jump& j : gb_.g.jumps()) {
      for (int branch : {1, -1}) {
        double s = wrap_periodic(branch * (j.x + static_cast<double>(k) / qd), 2.0);
        if (s > 2.0 - tol) s -= 2.0;
        if (s < -tol || s > 1.0 + tol) continue;
        const double y = c_ * std::clamp(s, 0.0, 1.0);
        const cplx e = std::polar(1.0, branch * pi * y / (4.0 * c_));
        SingularPoint sp;
        const cplx jump = cplx(0.0, -0.5) * d_[k] * e * j.height;
        const cplx cusp = -branch * 0.5 * d_[k] * e * j.height / pi;
        sp.x = side_ == Side::left ? y : 1.0 - y;
        sp.predicted_jump = side_ == Side::left ? jump : -jump;
        sp.predicted_cusp = cusp;
        sp.ks = {static_cast<int>(k)};
        pts.push_back(sp);
      }
    }
  }
  singular_ = merge_singular_points(std::move(pts), 1e-12);
}

double DislocClosedForm::distance_to_singular(double x) const { return distance_to_set(x, singular_); }

DislocClosedForm::Parts DislocClosedForm::left_parts(double y) const {
  const double qd = static_cast<double>(rt_.q);
  const cplx i(0.0, 1.0);
  const cplx ep = std::polar(1.0, pi * y / (4.0 * c_));
  const cplx em = std::conj(ep);
  Parts out;
  for (long long k = 0; k < 2 * rt_.q; ++k) {
    if (d_[k] == cplx(0.0)) continue;
    const double yp = y / c_ - static_cast<double>(k) / qd;
    const double ym = -y / c_ - static_cast<double>(k) / qd;
    out.L1 += 0.5 * d_[k] * (i * em * gb_.g.eval(ym) - i * ep * gb_.g.eval(yp));
    out.L2 += 0.5 * d_[k] * (ep * hilbert_synthesis(series_, yp) - em * hilbert_synthesis(series_, ym));
  }
  out.L3 = l3_const_ * std::sin(pi * y / (4.0 * c_));
  out.value = out.L1 + out.L2 + out.L3;
  return out;
}

DislocClosedForm::Parts DislocClosedForm::parts_unchecked(double x) const {
  return left_parts(side_ == Side::left ? x : 1.0 - x);
}

DislocClosedForm::Parts DislocClosedForm::parts(double x) const {
  if (!(x > lo() && x < hi())) throw DomainError("ur_closed_dis: x outside the revival side");
  if (distance_to_singular(x) < exclusion_radius())
    throw SingularityError("ur_closed_dis: x is within delta of a singular abscissa");
  return parts_unchecked(x);
}

cplx ur_closed_dis(const PiecewiseFn& u0, double b, double x, DislocRationalTime rt, int hilbert_modes,
                   double delta) {
  return DislocClosedForm(u0, b, rt, hilbert_modes, delta).eval(x);
}

DislocRevivalParts disloc_revival(const PiecewiseFn& u0, double b, DislocRationalTime rt, int modes, int grid,
                                  int hilbert_modes, double delta, bool with_solution) {
  check_b(b);
  if (grid < 1) throw DomainError("disloc_revival: grid must be positive");
  DislocRevivalParts out;
  out.side = rt.side;
  const bool left = rt.side == Side::left;
  const double lo = left ? 0.0 : b, width = left ? b : 1.0 - b;
  out.grid.resize(grid);
  for (int j = 0; j < grid; ++j) out.grid[j] = lo + width * (j + 0.5) / grid;

  const DislocTime t(rt, b);
  out.ur_series = left ? ur_series_dis(u0, b, out.grid, t, modes) : ur_series_dis_right(u0, b, out.grid, t, modes);
  if (with_solution) {
    out.u = DislocSolver(u0, b, modes).solve(out.grid, t);
    out.uc.resize(grid);
    for (int j = 0; j < grid; ++j) out.uc[j] = out.u[j] - out.ur_series[j];
  }

  const DislocClosedForm closed(u0, b, rt, hilbert_modes, delta);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  out.ur_closed.assign(grid, cplx(nan, nan));
  out.excluded.assign(grid, 0);
  parallel_for(static_cast<std::size_t>(grid), [&](std::size_t j) {
    if (closed.distance_to_singular(out.grid[j]) < closed.exclusion_radius()) {
      out.excluded[j] = 1;
      return;
    }
    out.ur_closed[j] = closed.parts_unchecked(out.grid[j]).value;
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
  out.l2_err = std::sqrt(sq * width / grid);
  return out;
}

}  // namespace revlab
