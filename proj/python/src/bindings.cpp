#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "supermech/problem.hpp"
#include "supermech/report.hpp"

namespace py = pybind11;
using namespace supermech;

namespace {

template <typename Run>
py::tuple guarded(const std::string& text, Run run) {
  Report report;
  {
    py::gil_scoped_release release;
    try {
      report = run(parse_problem(text));
    } catch (const ParseError& e) {
      report = parse_failure(e);
    }
  }
  return py::make_tuple(report.exit_code, report.output);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Higher-order Lagrangian supermechanics";

  // Later registrations take precedence, so the more specific class goes last.
  py::register_exception<Error>(m, "MathError", PyExc_ArithmeticError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

  m.def("format_problem", [](const std::string& text) { return print_problem(parse_problem(text)); },
        py::arg("text"), "Canonical text of a problem file.");

  m.def(
      "derive",
      [](const std::string& text, const std::string& emit) {
        Emit mode = emit == "latex" ? Emit::latex : Emit::json;
        return guarded(text, [&](const ProblemFile& p) { return run_derive(p, mode); });
      },
      py::arg("text"), py::arg("emit") = "json");

  m.def(
      "noether",
      [](const std::string& text, std::optional<std::string> symmetry,
         std::optional<std::string> charge) {
        NoetherRequest request{std::move(symmetry), std::move(charge)};
        return guarded(text, [&](const ProblemFile& p) { return run_noether(p, request); });
      },
      py::arg("text"), py::arg("symmetry") = py::none(), py::arg("charge") = py::none());

  m.def(
      "simulate",
      [](const std::string& text, double tol, std::optional<std::string> trajectory) {
        SimulateOptions options{tol, std::move(trajectory)};
        return guarded(text, [&](const ProblemFile& p) { return run_simulate(p, options); });
      },
      py::arg("text"), py::arg("tol") = 1e-6, py::arg("trajectory") = py::none());
}
