// revlab: spectra, profiles and revival comparisons from the command line.

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <numbers>
#include <optional>

#include "revlab/airy_revival.hpp"
#include "revlab/dislocation_revival.hpp"
#include "revlab/errors.hpp"
#include "revlab/io.hpp"
#include "revlab/parallel.hpp"

using namespace revlab;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitMisuse = 3;
constexpr int kExitAccuracy = 4;

struct MisuseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Overrides {
  std::string config, out;
  std::optional<int> n, modes, grid, threads;
  std::optional<double> delta;
};

const std::vector<double> kCuspEps{3e-2, 1e-2, 3e-3};
constexpr double kJumpEps = 1e-7;

RunConfig resolve(const Overrides& o) {
  RunConfig cfg = o.config.empty() ? RunConfig{} : load_config(o.config);
  if (o.n) cfg.modes = *o.n;
  if (o.modes) cfg.hilbert_modes = *o.modes;
  if (o.grid) cfg.grid = *o.grid;
  if (o.delta) cfg.delta = *o.delta;
  if (!o.out.empty()) cfg.csv_path = o.out;
  if (o.threads) set_thread_count(*o.threads);
  if (cfg.u0.piece_count() == 0) cfg.u0 = PiecewiseFn::constant(1.0, 0.0);
  validate_config(cfg);
  if (cfg.modes == 0) cfg.modes = cfg.problem == Problem::airy ? kDefaultAiryModes : kDefaultDislocModes;
  return cfg;
}

double nan() { return std::numeric_limits<double>::quiet_NaN(); }

std::vector<double> midpoints(double lo, double hi, int m) {
  std::vector<double> xs(m);
  for (int j = 0; j < m; ++j) xs[j] = lo + (hi - lo) * (j + 0.5) / m;
  return xs;
}

/// Writes to `path`, or to stdout when it is empty.
template <class F>
void emit(const std::string& path, F&& body) {
  if (path.empty()) {
    body(std::cout);
    return;
  }
  std::ofstream os(path);
  if (!os) throw ConfigError("cannot write " + path);
  body(os);
}

std::string sibling_json(const RunConfig& cfg) {
  if (!cfg.json_path.empty()) return cfg.json_path;
  if (cfg.csv_path.empty()) return {};
  const auto dot = cfg.csv_path.find_last_of('.');
  const auto slash = cfg.csv_path.find_last_of('/');
  const bool has_ext = dot != std::string::npos && (slash == std::string::npos || dot > slash);
  return (has_ext ? cfg.csv_path.substr(0, dot) : cfg.csv_path) + ".json";
}

json cjson(cplx z) { return json::array({z.real(), z.imag()}); }

json time_json(const RunConfig& cfg) {
  json t;
  if (cfg.time.rational) {
    t = {{"p", cfg.time.p}, {"q", cfg.time.q}, {"reduced", cfg.time.reduced}};
    if (cfg.time.reduced) t["input"] = {cfg.time.p_input, cfg.time.q_input};
    if (cfg.problem == Problem::dislocation) t["side"] = cfg.time.right_side ? "right" : "left";
  } else {
    t = {{"real", cfg.time.real_t}};
  }
  return t;
}

json table_json(const std::vector<JumpTableRow>& rows) {
  json out = json::array();
  for (const auto& r : rows)
    out.push_back({{"x", r.x},
                   {"predicted_jump", cjson(r.predicted_jump)},
                   {"measured_jump", cjson(r.measured_jump)},
                   {"predicted_cusp", cjson(r.predicted_cusp)},
                   {"measured_cusp", cjson(r.measured_cusp)},
                   {"cusp_residual", r.cusp_residual}});
  return out;
}

json rates_json(const std::vector<JumpTableRow>& rows) {
  json out = json::array();
  for (const auto& r : rows) out.push_back({{"x", r.x}, {"rate", cjson(r.measured_cusp)}});
  return out;
}

AiryRationalTime airy_rt(const RunConfig& cfg) { return AiryRationalTime::make(cfg.time.p, cfg.time.q); }

DislocRationalTime disloc_rt(const RunConfig& cfg) {
  return DislocRationalTime::make(cfg.time.p, cfg.time.q, cfg.time.right_side ? Side::right : Side::left);
}

AiryTime airy_time(const RunConfig& cfg) {
  return cfg.time.rational ? AiryTime(airy_rt(cfg)) : AiryTime(cfg.time.real_t);
}

DislocTime disloc_time(const RunConfig& cfg) {
  return cfg.time.rational ? DislocTime(disloc_rt(cfg), cfg.b) : DislocTime(cfg.time.real_t);
}

std::vector<JumpTableRow> airy_table(const AiryClosedForm& cf) {
  const ScalarField f = [&](double x) { return cplx(cf.parts_unchecked(wrap_periodic(x, 1.0)).value); };
  return jump_table(f, cf.singular_points(), kJumpEps, kCuspEps);
}

std::vector<JumpTableRow> disloc_table(const DislocClosedForm& cf) {
  // Near the ends of the side only a one-sided neighbourhood exists, so the
  // cusp radii shrink to the room available.
  const ScalarField f = [&](double x) { return cf.parts_unchecked(x).value; };
  std::vector<JumpTableRow> rows;
  for (const auto& sp : cf.singular_points()) {
    const double room = std::min(sp.x - cf.lo(), cf.hi() - sp.x) / 1.01;
    if (room <= 10.0 * kJumpEps) continue;
    const double scale = std::min(1.0, room / kCuspEps.front());
    std::vector<double> eps(kCuspEps);
    for (auto& e : eps) e *= scale;
    const auto one = jump_table(f, std::span(&sp, 1), kJumpEps, eps);
    rows.insert(rows.end(), one.begin(), one.end());
  }
  return rows;
}

// ------------------------------------------------------------------- eigs

int cmd_eigs(const RunConfig& cfg, const std::optional<int>& n_opt) {
  std::vector<SpectrumRow> rows;
  if (cfg.problem == Problem::airy) {
    const int n_max = n_opt ? *n_opt : (cfg.n_range_set ? cfg.n_max : 10);
    if (n_max < 1) throw ConfigError("eigs: n must be >= 1");
    rows = airy_spectrum_rows(n_max);
  } else {
    int lo = cfg.n_min, hi = cfg.n_max;
    if (n_opt) lo = -*n_opt, hi = *n_opt;
    else if (!cfg.n_range_set) lo = -10, hi = 10;
    const int side = disloc_zero_mode_side(cfg.b);
    if (lo <= 0 && hi >= 0 && side != 0)
      std::cerr << "warning: zero is not an eigenvalue for b != 1/2; row n = 0 is the low mode on the "
                << (side > 0 ? "left (0, b)" : "right (b, 1)") << " side\n";
    rows = disloc_spectrum_rows(cfg.b, lo, hi);
  }
  std::vector<std::vector<double>> out;
  for (const auto& r : rows) out.push_back({static_cast<double>(r.n), r.k, r.kappa_or_nu, r.lambda, r.norm_sq, r.residual});
  emit(cfg.csv_path, [&](std::ostream& os) {
    write_csv(os, {"n", "k_n", "kappa_or_nu", "lambda_n", "norm_sq", "residual"}, out);
  });
  return kExitOk;
}

// ------------------------------------------------------------------ solve

int solve_airy(const RunConfig& cfg) {
  const auto xs = midpoints(0.0, 1.0, cfg.grid);
  const AirySolver solver(cfg.u0, cfg.modes);
  const AiryTime t = airy_time(cfg);
  const auto u = solver.solve(xs, t);
  const auto ur = solver.ur(xs, t);
  std::optional<AiryClosedForm> cf;
  if (cfg.time.rational) cf.emplace(cfg.u0, airy_rt(cfg), cfg.hilbert_modes, cfg.delta);
  std::vector<std::vector<double>> rows(xs.size());
  parallel_for(xs.size(), [&](std::size_t j) {
    double closed = nan();
    cplx l1(nan(), nan()), l2(nan(), nan());
    if (cf && cf->distance_to_singular(xs[j]) >= cfg.delta) {
      const auto p = cf->parts_unchecked(xs[j]);
      closed = p.value;
      l1 = p.L1;
      l2 = p.L2;
    }
    rows[j] = {xs[j], u[j], ur[j], closed, u[j] - ur[j], l1.real(), l1.imag(), l2.real(), l2.imag()};
  });
  emit(cfg.csv_path, [&](std::ostream& os) {
    write_csv(os, {"x", "u", "UR_series", "UR_closed", "UC", "L1_re", "L1_im", "L2_re", "L2_im"}, rows);
  });
  json summary = {{"problem", "airy"}, {"time", time_json(cfg)}, {"N", cfg.modes}, {"delta", cfg.delta}};
  if (cf) summary["jump_table"] = table_json(airy_table(*cf));
  const std::string jpath = sibling_json(cfg);
  if (!jpath.empty()) emit(jpath, [&](std::ostream& os) { os << summary.dump(2) << '\n'; });
  return kExitOk;
}

int solve_disloc(const RunConfig& cfg) {
  const double b = cfg.b;
  const auto xs = midpoints(0.0, 1.0, cfg.grid);
  std::vector<double> left, right;
  for (double x : xs) (x < b ? left : right).push_back(x);
  const DislocTime t = disloc_time(cfg);
  const DislocSolver solver(cfg.u0, b, cfg.modes);
  const auto u = solver.solve(xs, t);
  auto ur = ur_series_dis(cfg.u0, b, left, t, cfg.modes);
  const auto ur_right = ur_series_dis_right(cfg.u0, b, right, t, cfg.modes);
  ur.insert(ur.end(), ur_right.begin(), ur_right.end());
  std::vector<std::vector<double>> rows(xs.size());
  for (std::size_t j = 0; j < xs.size(); ++j) {
    const cplx c = u[j] - ur[j];
    rows[j] = {xs[j], u[j].real(), u[j].imag(), ur[j].real(), ur[j].imag(), c.real(), c.imag(), xs[j] < b ? 0.0 : 1.0};
  }
  emit(cfg.csv_path, [&](std::ostream& os) {
    write_csv(os, {"x", "u_re", "u_im", "UR_re", "UR_im", "UC_re", "UC_im", "side"}, rows);
  });
  json summary = {{"problem", "dislocation"}, {"b", b}, {"time", time_json(cfg)}, {"N", cfg.modes}, {"delta", cfg.delta}};
  json sides = json::object();
  for (Side s : {Side::left, Side::right}) {
    const char* name = s == Side::left ? "left" : "right";
    const bool revival = cfg.time.rational && (s == Side::right) == cfg.time.right_side;
    json entry = {{"revival", revival}};
    if (revival) {
      const DislocClosedForm cf(cfg.u0, b, disloc_rt(cfg), cfg.hilbert_modes, cfg.delta);
      entry["jump_table"] = table_json(disloc_table(cf));
    } else {
      entry["note"] = cfg.time.rational ? "time belongs to the other side; profile here is not a revival"
                                        : "irrational time";
    }
    sides[name] = std::move(entry);
  }
  summary["sides"] = std::move(sides);
  const std::string jpath = sibling_json(cfg);
  if (!jpath.empty()) emit(jpath, [&](std::ostream& os) { os << summary.dump(2) << '\n'; });
  return kExitOk;
}

int cmd_solve(const RunConfig& cfg) { return cfg.problem == Problem::airy ? solve_airy(cfg) : solve_disloc(cfg); }

// ----------------------------------------------------------------- revive

int cmd_revive(const RunConfig& cfg) {
  if (!cfg.time.rational) throw MisuseError("revive requires rational time");
  std::vector<std::vector<double>> rows;
  if (cfg.problem == Problem::airy) {
    const AiryClosedForm cf(cfg.u0, airy_rt(cfg), cfg.hilbert_modes, cfg.delta);
    const auto xs = midpoints(0.0, 1.0, cfg.grid);
    rows.resize(xs.size());
    parallel_for(xs.size(), [&](std::size_t j) {
      if (cf.distance_to_singular(xs[j]) < cfg.delta) {
        rows[j] = {xs[j], nan(), nan(), nan(), nan(), nan(), nan(), nan()};
        return;
      }
      const auto p = cf.parts_unchecked(xs[j]);
      rows[j] = {xs[j], p.value, p.L1.real(), p.L1.imag(), p.L2.real(), p.L2.imag(), p.L3.real(), p.L3.imag()};
    });
    emit(cfg.csv_path, [&](std::ostream& os) {
      write_csv(os, {"x", "UR_closed", "L1_re", "L1_im", "L2_re", "L2_im", "L3_re", "L3_im"}, rows);
    });
  } else {
    const DislocClosedForm cf(cfg.u0, cfg.b, disloc_rt(cfg), cfg.hilbert_modes, cfg.delta);
    const auto xs = midpoints(cf.lo(), cf.hi(), cfg.grid);
    rows.resize(xs.size());
    parallel_for(xs.size(), [&](std::size_t j) {
      if (cf.distance_to_singular(xs[j]) < cf.exclusion_radius()) {
        rows[j] = {xs[j], nan(), nan(), nan(), nan(), nan(), nan(), nan(), nan()};
        return;
      }
      const auto p = cf.parts_unchecked(xs[j]);
      rows[j] = {xs[j], p.value.real(), p.value.imag(), p.L1.real(), p.L1.imag(),
                 p.L2.real(), p.L2.imag(), p.L3.real(), p.L3.imag()};
    });
    emit(cfg.csv_path, [&](std::ostream& os) {
      write_csv(os, {"x", "UR_re", "UR_im", "L1_re", "L1_im", "L2_re", "L2_im", "L3_re", "L3_im"}, rows);
    });
  }
  return kExitOk;
}

// ---------------------------------------------------------------- hilbert

int cmd_hilbert(const RunConfig& cfg) {
  const double l = cfg.u0.length();
  const auto s = fourier_series(cfg.u0, 0.0, cfg.hilbert_modes);
  const auto xs = midpoints(0.0, l, cfg.grid);
  const auto h = hilbert_synthesis(s, xs);
  std::vector<std::vector<double>> rows;
  for (std::size_t j = 0; j < xs.size(); ++j) rows.push_back({xs[j], h[j].real(), h[j].imag()});
  emit(cfg.csv_path, [&](std::ostream& os) { write_csv(os, {"x", "Hu_re", "Hu_im"}, rows); });
  return kExitOk;
}

// ---------------------------------------------------------------- compare

int cmd_compare(const RunConfig& cfg, const std::string& json_out) {
  if (!cfg.time.rational) throw MisuseError("compare requires rational time");
  json summary = {{"problem", cfg.problem == Problem::airy ? "airy" : "dislocation"},
                  {"p", cfg.time.p},
                  {"q", cfg.time.q},
                  {"reduced", cfg.time.reduced},
                  {"N", cfg.modes},
                  {"N_H", cfg.hilbert_modes},
                  {"grid", cfg.grid},
                  {"delta", cfg.delta},
                  {"threshold", cfg.threshold}};
  if (cfg.time.reduced) summary["input_time"] = {cfg.time.p_input, cfg.time.q_input};
  double sup = 0.0;
  std::vector<JumpTableRow> table;
  std::vector<std::vector<double>> rows;
  std::vector<std::string> header;
  if (cfg.problem == Problem::airy) {
    const auto r = airy_revival(cfg.u0, airy_rt(cfg), cfg.modes, cfg.grid, cfg.hilbert_modes, cfg.delta);
    sup = r.sup_err;
    summary["sup_err"] = r.sup_err;
    summary["l2_err"] = r.l2_err;
    summary["excluded_points"] = r.excluded_count;
    table = airy_table(AiryClosedForm(cfg.u0, airy_rt(cfg), cfg.hilbert_modes, cfg.delta));
    header = {"x", "u", "UR_series", "UR_closed", "UC", "L1_re", "L1_im", "L2_re", "L2_im"};
    for (std::size_t j = 0; j < r.grid.size(); ++j)
      rows.push_back({r.grid[j], r.u[j], r.ur_series[j], r.ur_closed[j], r.uc[j], r.L1[j].real(), r.L1[j].imag(),
                      r.L2[j].real(), r.L2[j].imag()});
  } else {
    const auto rt = disloc_rt(cfg);
    const auto r = disloc_revival(cfg.u0, cfg.b, rt, cfg.modes, cfg.grid, cfg.hilbert_modes, cfg.delta);
    sup = r.sup_err;
    summary["b"] = cfg.b;
    summary["side"] = cfg.time.right_side ? "right" : "left";
    summary["sup_err"] = r.sup_err;
    summary["l2_err"] = r.l2_err;
    summary["excluded_points"] = r.excluded_count;
    table = disloc_table(DislocClosedForm(cfg.u0, cfg.b, rt, cfg.hilbert_modes, cfg.delta));
    header = {"x", "u_re", "u_im", "UR_re", "UR_im", "UR_closed_re", "UR_closed_im", "UC_re", "UC_im", "side"};
    const double side = cfg.time.right_side ? 1.0 : 0.0;
    for (std::size_t j = 0; j < r.grid.size(); ++j)
      rows.push_back({r.grid[j], r.u[j].real(), r.u[j].imag(), r.ur_series[j].real(), r.ur_series[j].imag(),
                      r.ur_closed[j].real(), r.ur_closed[j].imag(), r.uc[j].real(), r.uc[j].imag(), side});
  }
  summary["jump_table"] = table_json(table);
  summary["cusp_growth_rates"] = rates_json(table);
  const bool pass = sup < cfg.threshold;
  summary["pass"] = pass;
  if (!cfg.csv_path.empty()) emit(cfg.csv_path, [&](std::ostream& os) { write_csv(os, header, rows); });
  emit(json_out, [&](std::ostream& os) { os << summary.dump(2) << '\n'; });
  return pass ? kExitOk : kExitAccuracy;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral solver and revival analysis for the Airy and dislocation problems"};
  app.require_subcommand(1);
  Overrides o;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", o.config, "JSON run configuration")->check(CLI::ExistingFile);
    sub->add_option("--out", o.out, "output path (stdout when omitted)");
    sub->add_option("--n", o.n, "mode count N (eigs: largest index)");
    sub->add_option("--modes", o.modes, "Hilbert mode count N_H");
    sub->add_option("--grid", o.grid, "grid size");
    sub->add_option("--delta", o.delta, "singularity exclusion radius");
    sub->add_option("--threads", o.threads, "worker threads (REVLAB_THREADS takes precedence)");
  };
  auto* eigs = app.add_subcommand("eigs", "eigenvalue table as CSV");
  auto* solve = app.add_subcommand("solve", "solution profile and revival decomposition as CSV");
  auto* revive = app.add_subcommand("revive", "closed-form revival part as CSV");
  auto* hilbert = app.add_subcommand("hilbert", "periodic Hilbert transform of u0 as CSV");
  auto* compare = app.add_subcommand("compare", "series against closed form, JSON summary");
  std::string csv_out;
  for (auto* sub : {eigs, solve, revive, hilbert}) add_common(sub);
  add_common(compare);
  compare->add_option("--csv", csv_out, "also write the sampled decomposition");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (eigs->parsed()) {
      Overrides eo = o;
      eo.n.reset();
      return cmd_eigs(resolve(eo), o.n);
    }
    if (compare->parsed()) {
      Overrides co = o;
      co.out.clear();
      RunConfig cfg = resolve(co);
      if (!csv_out.empty()) cfg.csv_path = csv_out;
      const std::string jout = o.out.empty() ? cfg.json_path : o.out;
      return cmd_compare(cfg, jout);
    }
    const RunConfig cfg = resolve(o);
    if (solve->parsed()) return cmd_solve(cfg);
    if (revive->parsed()) return cmd_revive(cfg);
    if (hilbert->parsed()) return cmd_hilbert(cfg);
  } catch (const MisuseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitMisuse;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const AccuracyError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitAccuracy;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  return kExitConfig;
}
