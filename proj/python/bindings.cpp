#include <pybind11/pybind11.h>

#include "kmk/cli/commands.hpp"

namespace py = pybind11;

namespace {

std::string run(const std::string& verb, const std::string& tower, const std::string& expr, const std::string& place,
                const std::string& w, const std::string& p, int precision, unsigned factor_bound,
                const std::string& windows) {
  kmk::cli::Command cmd;
  cmd.verb = verb;
  cmd.tower = tower;
  cmd.expr = expr;
  cmd.place = place;
  cmd.w = w;
  cmd.p = p;
  cmd.precision = precision;
  cmd.factor_bound = factor_bound;
  cmd.windows = windows;
  cmd.format = "structured";
  kmk::cli::Outcome out;
  {
    py::gil_scoped_release release;
    out = kmk::cli::execute(cmd);
  }
  out.doc["exit_code"] = out.exit_code;
  return out.doc.dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Kato-Milne cohomology engine; every call returns the CLI's structured document as JSON";
  m.attr("SCHEMA_VERSION") = kmk::cli::kSchemaVersion;
  m.def("run", &run, py::arg("verb"), py::arg("tower") = "t;x", py::arg("expr") = "", py::arg("place") = "",
        py::arg("w") = "", py::arg("p") = "", py::arg("precision") = 8, py::arg("factor_bound") = 12u,
        py::arg("windows") = "2,4,8");
}
