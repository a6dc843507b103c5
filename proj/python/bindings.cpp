#include <pybind11/pybind11.h>

#include "bethe/commands.hpp"

namespace py = pybind11;
using bethe::CommandResult;
using bethe::RunConfig;

namespace {

RunConfig make_config(std::uint64_t seed, std::size_t starts, double tol_newton, double tol_verify, bool exact) {
  RunConfig cfg{seed, starts, tol_newton, tol_verify, exact};
  cfg.validate();
  return cfg;
}

py::tuple wrap(const CommandResult& r) { return py::make_tuple(r.report.dump(), r.exit_code); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Weighted hyperplane arrangements, master functions and sl2 Bethe vectors";

  py::register_exception<bethe::InvalidInput>(m, "InvalidInput", PyExc_ValueError);
  py::register_exception<bethe::PreconditionViolation>(m, "PreconditionViolation", PyExc_RuntimeError);
  py::register_exception<bethe::Unsupported>(m, "Unsupported", PyExc_NotImplementedError);

  m.attr("schema_version") = bethe::io::kSchemaVersion;

  m.def("analyze", [](const std::string& input) { return wrap(bethe::cmd_analyze(bethe::io::Json::parse(input))); },
        py::arg("input"), "Combinatorics of an arrangement. Returns (report JSON, exit code).");

  const auto add = [&m](const char* name, CommandResult (*fn)(const bethe::io::Json&, const RunConfig&),
                        const char* doc) {
    m.def(
        name,
        [fn](const std::string& input, std::uint64_t seed, std::size_t starts, double tol_newton, double tol_verify,
             bool exact) {
          const RunConfig cfg = make_config(seed, starts, tol_newton, tol_verify, exact);
          return wrap(fn(bethe::io::Json::parse(input), cfg));
        },
        py::arg("input"), py::arg("seed") = 0, py::arg("starts") = 200, py::arg("tol_newton") = 1e-12,
        py::arg("tol_verify") = 1e-8, py::arg("exact") = true, doc);
  };
  add("critical", bethe::cmd_critical, "Critical points of the master function.");
  add("verify", bethe::cmd_verify, "Singular-vector, norm and orthogonality checks.");
  add("gaudin", bethe::cmd_gaudin, "Bethe vectors of an sl2 Gaudin model.");
}
