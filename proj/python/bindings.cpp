#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <limits>
#include <string>
#include <variant>

#include "revlab/airy_revival.hpp"
#include "revlab/dislocation_revival.hpp"
#include "revlab/errors.hpp"
#include "revlab/hilbert.hpp"
#include "revlab/parallel.hpp"
#include "revlab/specfun.hpp"

namespace py = pybind11;
using namespace revlab;

namespace {

template <class T>
py::array_t<T> to_array(const std::vector<T>& v) {
  return py::array_t<T>(static_cast<py::ssize_t>(v.size()), v.data());
}

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

Side parse_side(const std::string& s) {
  if (s == "left") return Side::left;
  if (s == "right") return Side::right;
  throw py::value_error("side must be 'left' or 'right'");
}

/// A float time, or (p, q) for a rational one.
using TimeArg = std::variant<double, std::pair<long long, long long>>;

AiryTime airy_time(const TimeArg& t) {
  if (const auto* pq = std::get_if<std::pair<long long, long long>>(&t))
    return AiryTime(AiryRationalTime::make(pq->first, pq->second));
  return AiryTime(std::get<double>(t));
}

DislocTime disloc_time(const TimeArg& t, double b, const std::string& side) {
  if (const auto* pq = std::get_if<std::pair<long long, long long>>(&t))
    return DislocTime(DislocRationalTime::make(pq->first, pq->second, parse_side(side)), b);
  return DislocTime(std::get<double>(t));
}

py::dict spectrum_dict(const std::vector<SpectrumRow>& rows) {
  std::vector<int> n;
  std::vector<double> k, asym, lambda, norm_sq, residual;
  for (const auto& r : rows) {
    n.push_back(r.n);
    k.push_back(r.k);
    asym.push_back(r.kappa_or_nu);
    lambda.push_back(r.lambda);
    norm_sq.push_back(r.norm_sq);
    residual.push_back(r.residual);
  }
  py::dict d;
  d["n"] = to_array(n);
  d["k"] = to_array(k);
  d["asymptotic"] = to_array(asym);
  d["lambda"] = to_array(lambda);
  d["norm_sq"] = to_array(norm_sq);
  d["residual"] = to_array(residual);
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Spectral solver and revival analysis for the Airy and dislocation problems";

  py::register_exception<SingularityError>(m, "SingularityError", PyExc_ValueError);
  py::register_exception<NumericError>(m, "NumericError", PyExc_RuntimeError);
  py::register_exception<AccuracyError>(m, "AccuracyError", PyExc_RuntimeError);

  py::class_<PiecewiseFn>(m, "PiecewiseFn", "Piecewise polynomial on [0, length]")
      .def_static("steps", &PiecewiseFn::steps, py::arg("length"), py::arg("breaks"), py::arg("values"),
                  "Piecewise constant; breaks run from 0 to length inclusive")
      .def_static("constant", &PiecewiseFn::constant, py::arg("length"), py::arg("value"))
      .def_static("from_global", &PiecewiseFn::from_global, py::arg("length"), py::arg("breaks"), py::arg("pieces"),
                  "Pieces given by monomial coefficients in the global variable x")
      .def_property_readonly("length", &PiecewiseFn::length)
      .def_property_readonly("breaks", [](const PiecewiseFn& f) {
        return std::vector<double>(f.breaks().begin(), f.breaks().end());
      })
      .def("__call__", &PiecewiseFn::eval, py::arg("x"))
      .def("__call__", [](const PiecewiseFn& f, const std::vector<double>& xs) {
        std::vector<cplx> out(xs.size());
        for (std::size_t i = 0; i < xs.size(); ++i) out[i] = f.eval(xs[i]);
        return to_array(out);
      }, py::arg("xs"))
      .def("jumps", [](const PiecewiseFn& f) {
        std::vector<std::pair<double, cplx>> out;
        for (const auto& j : f.jumps()) out.emplace_back(j.x, j.height);
        return out;
      })
      .def("reflected", &PiecewiseFn::reflected)
      .def("is_real", &PiecewiseFn::is_real)
      .def("__repr__", [](const PiecewiseFn& f) {
        return "<PiecewiseFn length=" + std::to_string(f.length()) + " pieces=" + std::to_string(f.piece_count()) + ">";
      });

  m.def("set_thread_count", &set_thread_count, py::arg("n"));

  // Spectra.
  m.def("airy_root", &airy_root, py::arg("n"));
  m.def("airy_root_offset", &airy_root_offset, py::arg("n"), "k_n - (2n - 1/3) pi at full relative precision");
  m.def("airy_spectrum", [](int n_max) { return spectrum_dict(airy_spectrum_rows(n_max)); }, py::arg("n_max"));
  m.def("disloc_root", &disloc_root, py::arg("c"), py::arg("n"));
  m.def("disloc_root_offset", &disloc_root_offset, py::arg("c"), py::arg("n"));
  m.def("disloc_spectrum", [](double b, int n_min, int n_max) {
    return spectrum_dict(disloc_spectrum_rows(b, n_min, n_max));
  }, py::arg("b"), py::arg("n_min"), py::arg("n_max"));

  // Gauss-sum weights.
  m.def("dk_airy", &dk_airy, py::arg("p"), py::arg("q"), py::arg("k"));
  m.def("dk_dis", &dk_dis, py::arg("p"), py::arg("q"), py::arg("k"));

  // Hilbert transform.
  m.def("hilbert_transform", [](const PiecewiseFn& f, const std::vector<double>& xs, int modes, cplx mu) {
    return to_array(hilbert_synthesis(fourier_series(f, mu, modes), xs));
  }, py::arg("f"), py::arg("xs"), py::arg("modes") = kDefaultHilbertModes, py::arg("mu") = cplx(0.0),
        "Spectral synthesis of the periodic Hilbert transform of f(x) e^{mu x}");
  m.def("hilbert_indicator", &hilbert_indicator, py::arg("a"), py::arg("b"), py::arg("period"), py::arg("x"));
  m.def("hilbert_pv", &hilbert_pv, py::arg("f"), py::arg("period"), py::arg("x"));

  // Airy problem.
  m.def("solve_airy", [](const PiecewiseFn& u0, const std::vector<double>& xs, const TimeArg& t, int modes) {
    const AirySolver s(u0, modes);
    const AiryTime at = airy_time(t);
    py::dict d;
    d["u"] = to_array(s.solve(xs, at));
    d["ur"] = to_array(s.ur(xs, at));
    return d;
  }, py::arg("u0"), py::arg("xs"), py::arg("t"), py::arg("modes") = kDefaultAiryModes,
        "Truncated solution and revival series; t is a float or a (p, q) pair");
  m.def("ur_closed_airy", [](const PiecewiseFn& u0, const std::vector<double>& xs, long long p, long long q,
                             int hilbert_modes, double delta) {
    const AiryClosedForm cf(u0, AiryRationalTime::make(p, q), hilbert_modes, delta);
    std::vector<double> out(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i)
      out[i] = cf.distance_to_singular(xs[i]) < delta ? kNaN : cf.parts_unchecked(xs[i]).value;
    return to_array(out);
  }, py::arg("u0"), py::arg("xs"), py::arg("p"), py::arg("q"), py::arg("hilbert_modes") = kDefaultHilbertModes,
        py::arg("delta") = kDefaultDelta, "Closed-form revival part, NaN within delta of a singular point");
  m.def("airy_revival", [](const PiecewiseFn& u0, long long p, long long q, int modes, int grid, int hilbert_modes,
                           double delta) {
    const auto r = airy_revival(u0, AiryRationalTime::make(p, q), modes, grid, hilbert_modes, delta);
    py::dict d;
    d["grid"] = to_array(r.grid);
    d["u"] = to_array(r.u);
    d["ur_series"] = to_array(r.ur_series);
    d["ur_closed"] = to_array(r.ur_closed);
    d["uc"] = to_array(r.uc);
    d["sup_err"] = r.sup_err;
    d["l2_err"] = r.l2_err;
    d["excluded_points"] = r.excluded_count;
    return d;
  }, py::arg("u0"), py::arg("p"), py::arg("q"), py::arg("modes") = kDefaultAiryModes, py::arg("grid") = 1024,
        py::arg("hilbert_modes") = kDefaultHilbertModes, py::arg("delta") = kDefaultDelta);

  // Dislocation problem.
  m.def("reflect_problem", &reflect_problem, py::arg("u0"), py::arg("b"));
  m.def("solve_disloc", [](const PiecewiseFn& u0, double b, const std::vector<double>& xs, const TimeArg& t,
                           const std::string& side, int modes) {
    const DislocTime dt = disloc_time(t, b, side);
    const DislocSolver s(u0, b, modes);
    std::vector<double> left, right;
    std::vector<std::size_t> li, ri;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (xs[i] > 0.0 && xs[i] < b) left.push_back(xs[i]), li.push_back(i);
      else if (xs[i] > b && xs[i] < 1.0) right.push_back(xs[i]), ri.push_back(i);
    }
    std::vector<cplx> ur(xs.size(), cplx(kNaN, kNaN));
    const auto ul = ur_series_dis(u0, b, left, dt, modes);
    const auto uright = ur_series_dis_right(u0, b, right, dt, modes);
    for (std::size_t j = 0; j < li.size(); ++j) ur[li[j]] = ul[j];
    for (std::size_t j = 0; j < ri.size(); ++j) ur[ri[j]] = uright[j];
    py::dict d;
    d["u"] = to_array(s.solve(xs, dt));
    d["ur"] = to_array(ur);
    return d;
  }, py::arg("u0"), py::arg("b"), py::arg("xs"), py::arg("t"), py::arg("side") = "left",
        py::arg("modes") = kDefaultDislocModes,
        "Truncated solution and revival series on each side (NaN at 0, b, 1); t is a float or (p, q)");
  m.def("ur_closed_disloc", [](const PiecewiseFn& u0, double b, const std::vector<double>& xs, long long p, long long q,
                               const std::string& side, int hilbert_modes, double delta) {
    const DislocClosedForm cf(u0, b, DislocRationalTime::make(p, q, parse_side(side)), hilbert_modes, delta);
    std::vector<cplx> out(xs.size(), cplx(kNaN, kNaN));
    for (std::size_t i = 0; i < xs.size(); ++i)
      if (xs[i] > cf.lo() && xs[i] < cf.hi() && cf.distance_to_singular(xs[i]) >= cf.exclusion_radius())
        out[i] = cf.parts_unchecked(xs[i]).value;
    return to_array(out);
  }, py::arg("u0"), py::arg("b"), py::arg("xs"), py::arg("p"), py::arg("q"), py::arg("side") = "left",
        py::arg("hilbert_modes") = kDefaultHilbertModes, py::arg("delta") = 1e-2,
        "Closed-form revival part on the side of the time, NaN elsewhere and near singular points");
  m.def("disloc_revival", [](const PiecewiseFn& u0, double b, long long p, long long q, const std::string& side,
                             int modes, int grid, int hilbert_modes, double delta, bool with_solution) {
    const auto r = disloc_revival(u0, b, DislocRationalTime::make(p, q, parse_side(side)), modes, grid, hilbert_modes,
                                  delta, with_solution);
    py::dict d;
    d["grid"] = to_array(r.grid);
    d["u"] = to_array(r.u);
    d["ur_series"] = to_array(r.ur_series);
    d["ur_closed"] = to_array(r.ur_closed);
    d["uc"] = to_array(r.uc);
    d["sup_err"] = r.sup_err;
    d["l2_err"] = r.l2_err;
    d["excluded_points"] = r.excluded_count;
    return d;
  }, py::arg("u0"), py::arg("b"), py::arg("p"), py::arg("q"), py::arg("side") = "left",
        py::arg("modes") = kDefaultDislocModes, py::arg("grid") = 1024, py::arg("hilbert_modes") = kDefaultHilbertModes,
        py::arg("delta") = 1e-2, py::arg("with_solution") = true);
}
