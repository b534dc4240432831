// Python surface for the analysis library. Everything crosses the boundary
// as strings: a problem document in, JSON/CSV/SVG text out. Parsing the JSON
// on the python side keeps this layer free of object-graph conversions.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <utility>

#include "polyrad/analysis.hpp"
#include "polyrad/face_zeros.hpp"
#include "polyrad/newton.hpp"
#include "polyrad/problem_spec.hpp"
#include "polyrad/report.hpp"
#include "polyrad/sublevel.hpp"

namespace py = pybind11;

namespace {

std::string analyze_doc(const std::string& text) {
  polyrad::ProblemSpec spec = polyrad::parse_spec(text);
  polyrad::AnalysisResult res = polyrad::analyze_problem(spec);
  return polyrad::analysis_json(spec, res);
}

std::string region_doc(const std::string& text) {
  polyrad::ProblemSpec spec = polyrad::parse_spec(text);
  return polyrad::region_json(polyrad::analyze_problem(spec));
}

std::string slice_doc(const std::string& text) {
  polyrad::ProblemSpec spec = polyrad::parse_spec(text);
  return polyrad::slice_json(polyrad::analyze_problem(spec));
}

std::string svg_doc(const std::string& text) {
  polyrad::ProblemSpec spec = polyrad::parse_spec(text);
  return polyrad::region_svg(polyrad::analyze_problem(spec));
}

// (csv, fit_json) for the growth measurement configured in the document.
std::pair<std::string, std::string> sublevel_run(const std::string& text) {
  polyrad::ProblemSpec spec = polyrad::parse_spec(text);
  polyrad::NewtonPolyhedron poly = polyrad::build_polyhedron(spec.phase);

  int order = 0;
  if (spec.oOverride) {
    order = *spec.oOverride;
  } else {
    order = polyrad::max_zero_order(spec.phase,
                                    polyrad::enumerate_compact_faces(poly))
                .order;
  }
  std::optional<polyrad::Rat> predicted =
      polyrad::predicted_a0(poly, spec.blocks, order);

  std::vector<polyrad::GrowthPoint> points =
      polyrad::run_sublevel(spec, spec.sublevel);
  polyrad::GrowthFit fit =
      polyrad::fit_growth(points, spec.dimension, spec.sublevel.r);
  return {polyrad::sublevel_csv(points),
          polyrad::growth_fit_json(fit, predicted)};
}

// (csv, report_json) for the norm-ratio box test configured in the document.
std::pair<std::string, std::string> sharpness_run(const std::string& text) {
  polyrad::ProblemSpec spec = polyrad::parse_spec(text);
  polyrad::AnalysisResult shell;
  shell.poly = polyrad::build_polyhedron(spec.phase);
  polyrad::SharpnessReport report =
      polyrad::run_sharpness_job(spec, shell, spec.sharpness);
  return {polyrad::sharpness_csv(report), polyrad::sharpness_json(report)};
}

}  // namespace

PYBIND11_MODULE(_polyrad, m) {
  m.doc() = "Newton polyhedron invariants, smoothing regions, and the "
            "measurement harnesses, exposed as text-document transforms.";

  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const polyrad::SpecError& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    }
  });

  m.def("analyze_json", &analyze_doc, py::arg("spec_text"),
        py::call_guard<py::gil_scoped_release>(),
        "Full invariant report (JSON) for a problem document.");
  m.def("region_json", &region_doc, py::arg("spec_text"),
        py::call_guard<py::gil_scoped_release>(),
        "Improvement-region polytopes (JSON).");
  m.def("slice_json", &slice_doc, py::arg("spec_text"),
        py::call_guard<py::gil_scoped_release>(),
        "Boundedness polygon on the exponent square (JSON).");
  m.def("render_svg", &svg_doc, py::arg("spec_text"),
        py::call_guard<py::gil_scoped_release>(),
        "SVG drawing of the exponent-square slice.");
  m.def("sublevel_run", &sublevel_run, py::arg("spec_text"),
        py::call_guard<py::gil_scoped_release>(),
        "Run the configured sublevel growth sweep; returns (csv, fit_json).");
  m.def("sharpness_run", &sharpness_run, py::arg("spec_text"),
        py::call_guard<py::gil_scoped_release>(),
        "Run the configured box-family norm test; returns (csv, report_json).");
}
