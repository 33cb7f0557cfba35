#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "revlab/piecewise.hpp"

namespace revlab {

using json = nlohmann::json;

/// {"length", "breaks", "pieces", "complex"[, "basis": "global" | "local"]}.
/// Coefficients are numbers or [re, im] pairs; "breaks" runs from 0 to the length;
/// the final endpoint may be omitted.
PiecewiseFn piecewise_from_json(const json& j);
json piecewise_to_json(const PiecewiseFn& f, bool local_basis = false);

enum class Problem { airy, dislocation };

struct TimeSpec {
  bool rational = false;
  long long p = 1, q = 1;
  bool right_side = false;
  /// Input p/q had a common factor and was reduced.
  bool reduced = false;
  long long p_input = 1, q_input = 1;
  double real_t = 0.0;
};

struct RunConfig {
  Problem problem = Problem::airy;
  double b = 0.5;
  PiecewiseFn u0;
  TimeSpec time;
  int modes = 0;  ///< 0 selects the problem default
  int hilbert_modes = 1 << 13;
  int grid = 1024;
  double delta = 1e-2;
  double threshold = 5e-3;
  int n_min = 0, n_max = 10;
  bool n_range_set = false;
  std::string csv_path, json_path;
};

/// Throws ConfigError on malformed or out-of-range input.
RunConfig parse_config(const json& j);
RunConfig load_config(const std::string& path);
/// Range checks shared by the parser and command-line overrides.
void validate_config(const RunConfig& cfg);

/// 17 significant digits.
std::string fmt17(double v);

/// CSV with a header row; every value printed with fmt17.
void write_csv(std::ostream& os, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

}  // namespace revlab
