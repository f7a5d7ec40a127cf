#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <complex>

#include "phifix/corpus.hpp"
#include "phifix/errors.hpp"
#include "phifix/jsonout.hpp"
#include "phifix/scenario.hpp"

namespace py = pybind11;
using namespace phifix;

namespace {

RunOptions make_options(double tol, std::optional<double> step, int angular) {
    RunOptions options;
    options.tol = tol;
    options.step_override = step;
    options.angular_n = angular;
    return options;
}

std::string run_text(const std::string& text, const std::string& name, double tol,
                     std::optional<double> step, int angular) {
    Scenario scenario = parse_scenario(text, name);
    return report_json(run_scenario(scenario, make_options(tol, step, angular)));
}

std::string corpus_json(double tol) {
    JsonWriter w;
    bool all = true;
    w.begin_object();
    w.key("scenarios").begin_array();
    for (const CorpusScenario& cs : corpus_scenarios()) {
        Scenario scenario = parse_scenario(cs.text, std::string(cs.name));
        Report report = run_scenario(scenario, make_options(tol, std::nullopt, 360));
        all = all && report.all_pass;
        report_json_into(report, w);
    }
    w.end_array();
    w.key("pass").value(all);
    w.end_object();
    return std::move(w).take();
}

std::string scan_json(std::uint64_t seed, int trials, int max_points) {
    ScanConfig config;
    config.trials = trials;
    config.max_points = max_points;
    ScanReport report = scan_random(config, seed);
    JsonWriter w;
    w.begin_object();
    w.key("seed").value(static_cast<long long>(report.seed));
    w.key("trials").value(report.trials);
    w.key("certifications").value(report.certifications);
    w.key("soundness_violations").value(report.soundness_violations.size());
    w.key("converse_failures").value(report.converse_failures.size());
    w.end_object();
    return std::move(w).take();
}

std::complex<double> eval_text(const std::string& text, std::complex<double> value, bool complex_kind) {
    Piecewise f = parse_piecewise(text);
    Point p = eval(f, to_point(value), complex_kind);
    return {p.re, p.im};
}

}  // namespace

PYBIND11_MODULE(phifix, m) {
    m.doc() = "Verification laboratory for phi-fixed circles and discs of metric-space self-maps";

    m.def("parse", [](const std::string& text) { return print_piecewise(parse_piecewise(text)); },
          py::arg("text"),
          "Parse a piecewise expression and return its canonical form; raises ValueError on "
          "malformed input.");
    m.def("eval", &eval_text, py::arg("text"), py::arg("value"), py::arg("complex_kind") = false,
          "Evaluate a piecewise expression at a point.");
    m.def("run_scenario", &run_text, py::arg("text"), py::arg("name") = "scenario",
          py::arg("tol") = 1e-9, py::arg("step") = std::nullopt, py::arg("angular") = 360,
          "Run a scenario given as text; returns the JSON report string.");
    m.def("corpus", &corpus_json, py::arg("tol") = 1e-9,
          "Run the bundled scenarios; returns the aggregate JSON report string.");
    m.def("corpus_names", [] {
        std::vector<std::string> names;
        for (const CorpusScenario& cs : corpus_scenarios()) names.emplace_back(cs.name);
        return names;
    });
    m.def("corpus_text", [](const std::string& name) {
        for (const CorpusScenario& cs : corpus_scenarios())
            if (cs.name == name) return std::string(cs.text);
        throw std::invalid_argument("no bundled scenario named '" + name + "'");
    });
    m.def("scan", &scan_json, py::arg("seed"), py::arg("trials") = 1000, py::arg("max_points") = 8,
          "Random soundness/converse sweep; returns a JSON summary string.");

    py::register_exception<ParseError>(m, "PiecewiseParseError", PyExc_ValueError);
    py::register_exception<ValidationError>(m, "ScenarioValidationError", PyExc_ValueError);

    m.attr("__version__") = "0.1.0";
}
