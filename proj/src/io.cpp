#include "revlab/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <ostream>

#include "revlab/errors.hpp"

namespace revlab {

namespace {

cplx coeff_from_json(const json& v) {
  if (v.is_number()) return v.get<double>();
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
    return {v[0].get<double>(), v[1].get<double>()};
  throw ConfigError("piecewise: coefficient must be a number or an [re, im] pair");
}

json coeff_to_json(cplx c, bool complex) {
  if (!complex) return c.real();
  return json::array({c.real(), c.imag()});
}

template <class T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: bad value for '") + key + "': " + e.what());
  }
}

}  // namespace

PiecewiseFn piecewise_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("piecewise: expected an object");
  for (const char* key : {"length", "breaks", "pieces"})
    if (!j.contains(key)) throw ConfigError(std::string("piecewise: missing '") + key + "'");
  try {
    const double length = j.at("length").get<double>();
    std::vector<double> breaks = j.at("breaks").get<std::vector<double>>();
    std::vector<std::vector<cplx>> pieces;
    for (const auto& piece : j.at("pieces")) {
      std::vector<cplx> c;
      for (const auto& v : piece) c.push_back(coeff_from_json(v));
      pieces.push_back(std::move(c));
    }
    if (breaks.size() == pieces.size()) breaks.push_back(length);
    const bool complex = get_or(j, "complex", false);
    if (!complex)
      for (const auto& piece : pieces)
        for (cplx c : piece)
          if (c.imag() != 0.0) throw ConfigError("piecewise: complex coefficient in a real function");
    const std::string basis = get_or<std::string>(j, "basis", "global");
    if (basis == "global") return PiecewiseFn::from_global(length, std::move(breaks), pieces);
    if (basis == "local") return PiecewiseFn::from_local(length, std::move(breaks), std::move(pieces));
    throw ConfigError("piecewise: basis must be 'global' or 'local'");
  } catch (const json::exception& e) {
    throw ConfigError(std::string("piecewise: ") + e.what());
  } catch (const DomainError& e) {
    throw ConfigError(std::string("piecewise: ") + e.what());
  }
}

json piecewise_to_json(const PiecewiseFn& f, bool local_basis) {
  const bool complex = !f.is_real();
  json pieces = json::array();
  for (std::size_t j = 0; j < f.piece_count(); ++j) {
    json piece = json::array();
    if (local_basis) {
      for (cplx c : f.local_coeffs(j)) piece.push_back(coeff_to_json(c, complex));
    } else {
      for (cplx c : f.global_coeffs(j)) piece.push_back(coeff_to_json(c, complex));
    }
    pieces.push_back(std::move(piece));
  }
  json out = {{"length", f.length()},
              {"breaks", std::vector<double>(f.breaks().begin(), f.breaks().end())},
              {"pieces", std::move(pieces)},
              {"complex", complex}};
  if (local_basis) out["basis"] = "local";
  return out;
}

void validate_config(const RunConfig& cfg) {
  if (cfg.grid < 16) throw ConfigError("config: grid must be at least 16");
  if (!(cfg.delta > 0.0)) throw ConfigError("config: delta must be positive");
  if (cfg.modes < 0) throw ConfigError("config: modes must be positive");
  if (cfg.hilbert_modes < 1) throw ConfigError("config: hilbert_modes must be positive");
  if (cfg.problem == Problem::dislocation && !(cfg.b >= 0.05 && cfg.b <= 0.95))
    throw ConfigError("config: b must lie in [0.05, 0.95]");
  if (cfg.u0.piece_count() > 0 && cfg.u0.length() != 1.0)
    throw ConfigError("config: u0 must be defined on [0, 1]");
  if (cfg.problem == Problem::airy && cfg.time.rational && cfg.time.right_side)
    throw ConfigError("config: the Airy problem has no time side");
}

RunConfig parse_config(const json& j) {
  if (!j.is_object()) throw ConfigError("config: expected a JSON object");
  RunConfig cfg;
  const std::string problem = get_or<std::string>(j, "problem", "airy");
  if (problem == "airy") cfg.problem = Problem::airy;
  else if (problem == "dislocation") cfg.problem = Problem::dislocation;
  else throw ConfigError("config: problem must be 'airy' or 'dislocation'");
  cfg.b = get_or(j, "b", 0.5);
  if (j.contains("u0")) cfg.u0 = piecewise_from_json(j.at("u0"));

  if (j.contains("time")) {
    const json& t = j.at("time");
    if (t.contains("rational")) {
      const json& r = t.at("rational");
      const long long p = get_or(r, "p", 0LL), q = get_or(r, "q", 0LL);
      if (p < 1 || q < 1) throw ConfigError("config: rational time needs p, q >= 1");
      const long long g = std::gcd(p, q);
      cfg.time.rational = true;
      cfg.time.p_input = p;
      cfg.time.q_input = q;
      cfg.time.p = p / g;
      cfg.time.q = q / g;
      cfg.time.reduced = g != 1;
      const std::string side = get_or<std::string>(r, "side", "left");
      if (side != "left" && side != "right") throw ConfigError("config: side must be 'left' or 'right'");
      cfg.time.right_side = side == "right";
    } else if (t.contains("real")) {
      cfg.time.real_t = get_or(t, "real", 0.0);
      if (!std::isfinite(cfg.time.real_t)) throw ConfigError("config: real time must be finite");
    } else {
      throw ConfigError("config: time needs 'rational' or 'real'");
    }
  }
  cfg.modes = get_or(j, "modes", 0);
  cfg.hilbert_modes = get_or(j, "hilbert_modes", cfg.hilbert_modes);
  cfg.grid = get_or(j, "grid", cfg.grid);
  cfg.delta = get_or(j, "delta", cfg.delta);
  cfg.threshold = get_or(j, "threshold", cfg.threshold);
  if (j.contains("n_range")) {
    const auto r = get_or<std::vector<int>>(j, "n_range", {});
    if (r.size() != 2 || r[0] > r[1]) throw ConfigError("config: n_range must be [lo, hi]");
    cfg.n_min = r[0];
    cfg.n_max = r[1];
    cfg.n_range_set = true;
  }
  if (j.contains("outputs")) {
    const json& o = j.at("outputs");
    cfg.csv_path = get_or<std::string>(o, "csv", "");
    cfg.json_path = get_or<std::string>(o, "json", "");
  }
  validate_config(cfg);
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError("config: " + path + ": " + e.what());
  }
  return parse_config(j);
}

std::string fmt17(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_csv(std::ostream& os, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
  for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
  os << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << fmt17(row[i]);
    os << '\n';
  }
}

}  // namespace revlab
