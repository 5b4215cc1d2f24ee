#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "ancsim/analysis/correlation.hpp"
#include "ancsim/analysis/spectral.hpp"
#include "ancsim/analysis/stability.hpp"
#include "ancsim/analysis/wiener.hpp"
#include "ancsim/cli/commands.hpp"
#include "ancsim/cli/presets.hpp"
#include "ancsim/controllers/steps.hpp"
#include "ancsim/errors.hpp"
#include "ancsim/harness/config_json.hpp"
#include "ancsim/harness/persist.hpp"
#include "ancsim/harness/runner.hpp"

namespace py = pybind11;
using namespace ancsim;
using nlohmann::json;

namespace {

py::array_t<double> to_array(const std::vector<double>& v) {
  return py::array_t<double>(static_cast<py::ssize_t>(v.size()), v.data());
}

harness::ScenarioConfig parse_scenario(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("scenario is not valid JSON: ") + e.what());
  }
  return harness::scenario_from_json(doc);
}

py::dict run(const std::string& scenario_json, bool varying) {
  const auto config = parse_scenario(scenario_json);
  harness::RunResult result;
  {
    py::gil_scoped_release release;
    result = varying ? harness::run_varying_environment(config) : harness::run_scenario(config);
  }
  const auto csv = harness::trajectory_csv(result.trajectory, result.config.filter_length,
                                           result.config.weight_cap);
  py::dict out;
  out["summary"] = harness::summary_json(result, harness::fnv1a_hex(csv)).dump();
  out["trajectory_csv"] = csv;
  out["error_signal"] = to_array(result.error_signal);
  out["disturbance_signal"] = to_array(result.disturbance_signal);
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Constrained active noise control simulator";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  auto data = py::register_exception<DataError>(m, "DataError", PyExc_RuntimeError);
  py::register_exception<SingularMatrixError>(m, "SingularMatrixError", data.ptr());
  py::register_exception<DivergenceError>(m, "DivergenceError", PyExc_RuntimeError);
  py::register_exception<IoError>(m, "IoError", PyExc_OSError);

  m.def("preset_names", &cli::preset_names);
  m.def("preset", [](const std::string& name) { return harness::to_json(cli::preset(name)).dump(); },
        py::arg("name"), "Scenario JSON for a named preset.");
  m.def("run_scenario", [](const std::string& s) { return run(s, false); }, py::arg("scenario_json"));
  m.def("run_varying_environment", [](const std::string& s) { return run(s, true); },
        py::arg("scenario_json"));
  m.def("analyze", [](const std::string& s) { return cli::analyze_scenario(parse_scenario(s)).dump(); },
        py::arg("scenario_json"));
  m.def("apply_override", [](const std::string& s, const std::string& assignment) {
    auto doc = json::parse(s);
    harness::apply_override(doc, assignment);
    return doc.dump();
  });
  m.def("main", [](std::vector<std::string> args) {
    args.insert(args.begin(), "ancsim");
    std::vector<char*> argv;
    for (auto& a : args) argv.push_back(a.data());
    std::ostringstream out, err;
    const int code = cli::main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
    return py::make_tuple(code, out.str(), err.str());
  }, py::arg("args"), "Runs the command-line tool; returns (exit_code, stdout, stderr).");

  m.def("welch_psd", [](std::vector<double> signal, double fs, std::size_t segment, double overlap) {
    const auto p = analysis::welch_psd(signal, fs, segment, overlap);
    return py::make_tuple(to_array(p.frequencies), to_array(p.density));
  }, py::arg("signal"), py::arg("sample_rate"), py::arg("segment_length") = 4096,
        py::arg("overlap") = 0.5);
  m.def("wiener_optimal", [](std::vector<double> x, std::vector<double> d,
                             std::vector<double> s_hat, std::size_t taps) {
    return analysis::wiener_optimal(
        analysis::build_correlation_model(x, d, acoustics::FirPath(std::move(s_hat)), taps));
  }, py::arg("x"), py::arg("d"), py::arg("s_hat"), py::arg("taps"));
  m.def("lagrangian_factor", &controllers::lagrangian_factor, py::arg("secondary_power_gain"),
        py::arg("disturbance_power"), py::arg("rho_sq"));
  m.def("time_constant", &analysis::time_constant, py::arg("mu1"), py::arg("kappa"),
        py::arg("lambda_min"));
}
