#include "revlab/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "revlab/errors.hpp"
#include "revlab/parallel.hpp"

namespace revlab {

std::vector<SingularPoint> merge_singular_points(std::vector<SingularPoint> pts, double tol) {
  std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) { return a.x < b.x; });
  std::vector<SingularPoint> out;
  for (auto& p : pts) {
    if (!out.empty() && p.x - out.back().x <= tol) {
      out.back().predicted_jump += p.predicted_jump;
      out.back().predicted_cusp += p.predicted_cusp;
      out.back().ks.insert(out.back().ks.end(), p.ks.begin(), p.ks.end());
    } else {
      out.push_back(std::move(p));
    }
  }
  return out;
}

double distance_to_set(double x, std::span<const SingularPoint> pts, double period) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& p : pts) {
    const double d = period > 0.0 ? std::abs(circular_offset(x, p.x, period)) : std::abs(x - p.x);
    best = std::min(best, d);
  }
  return best;
}

cplx jump_estimate(const ScalarField& f, double x0, double eps) { return f(x0 + eps) - f(x0 - eps); }

CuspFit cusp_fit(const ScalarField& f, double x0, std::span<const double> eps) {
  if (eps.size() < 2) throw DomainError("cusp_fit: need at least two radii");
  std::vector<double> s;
  std::vector<cplx> v;
  for (double e : eps) {
    s.push_back(std::log(1.0 / e));
    v.push_back(0.5 * (f(x0 + e) + f(x0 - e)));
  }
  const double n = static_cast<double>(s.size());
  double sm = 0.0;
  cplx vm = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    sm += s[i];
    vm += v[i];
  }
  sm /= n;
  vm /= n;
  double sxx = 0.0;
  cplx sxy = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    sxx += (s[i] - sm) * (s[i] - sm);
    sxy += (s[i] - sm) * (v[i] - vm);
  }
  CuspFit fit;
  fit.rate = sxy / sxx;
  for (std::size_t i = 0; i < s.size(); ++i)
    fit.max_residual = std::max(fit.max_residual, std::abs(v[i] - vm - fit.rate * (s[i] - sm)));
  return fit;
}

std::vector<JumpTableRow> jump_table(const ScalarField& f, std::span<const SingularPoint> pts,
                                     double jump_eps, std::span<const double> cusp_eps) {
  std::vector<JumpTableRow> rows(pts.size());
  parallel_for(pts.size(), [&](std::size_t i) {
    const auto& p = pts[i];
    JumpTableRow r;
    r.x = p.x;
    r.predicted_jump = p.predicted_jump;
    r.predicted_cusp = p.predicted_cusp;
    r.measured_jump = jump_estimate(f, p.x, jump_eps);
    if (cusp_eps.size() >= 2) {
      const CuspFit fit = cusp_fit(f, p.x, cusp_eps);
      r.measured_cusp = fit.rate;
      r.cusp_residual = fit.max_residual;
    }
    rows[i] = r;
  });
  return rows;
}

std::vector<DetectedJump> scan_jumps(const ScalarField& f, double lo, double hi, int samples,
                                     double threshold) {
  if (!(hi > lo) || samples < 2) throw DomainError("scan_jumps: bad interval or sample count");
  const double width = hi - lo;
  std::vector<double> xs(static_cast<std::size_t>(samples) + 1);
  for (int i = 0; i <= samples; ++i) xs[i] = lo + width * i / samples;
  xs.back() = hi;
  std::vector<cplx> vals(xs.size());
  parallel_for(xs.size(), [&](std::size_t i) { vals[i] = f(xs[i]); });

  std::vector<std::size_t> cells;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i)
    if (std::abs(vals[i + 1] - vals[i]) > threshold) cells.push_back(i);

  std::vector<DetectedJump> found(cells.size());
  std::vector<char> keep(cells.size(), 0);
  const double loc_tol = 1e-11 * width;
  const double eta = 1e-9 * width;
  parallel_for(cells.size(), [&](std::size_t c) {
    double a = xs[cells[c]], b = xs[cells[c] + 1];
    cplx fa = vals[cells[c]], fb = vals[cells[c] + 1];
    while (b - a > loc_tol) {
      const double m = 0.5 * (a + b);
      const cplx fm = f(m);
      if (std::abs(fm - fa) >= std::abs(fb - fm)) {
        b = m;
        fb = fm;
      } else {
        a = m;
        fa = fm;
      }
    }
    const double x = 0.5 * (a + b);
    if (x - eta <= lo || x + eta >= hi) return;
    const cplx j = jump_estimate(f, x, eta);
    if (std::abs(j) > 0.5 * threshold) {
      found[c] = {x, j};
      keep[c] = 1;
    }
  });
  std::vector<DetectedJump> out;
  for (std::size_t c = 0; c < cells.size(); ++c) {
    if (!keep[c]) continue;
    if (!out.empty() && std::abs(found[c].x - out.back().x) <= 1e-8 * width) continue;
    out.push_back(found[c]);
  }
  return out;
}

}  // namespace revlab
