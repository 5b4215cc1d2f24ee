#include <exception>
#include <sstream>

#include "CLI11.hpp"
#include "ancsim/cli/commands.hpp"
#include "ancsim/cli/presets.hpp"
#include "ancsim/errors.hpp"
#include "ancsim/harness/persist.hpp"

namespace ancsim::cli {

namespace fs = std::filesystem;

namespace {

struct Common {
  std::string config;
  std::vector<std::string> overrides;
  std::int64_t seed = -1;
  std::string output_dir = "out";
  std::string algorithms;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--config", c.config, "Scenario JSON file (fields mirror ScenarioConfig)");
  cmd->add_option("--set", c.overrides, "Override key=value (repeatable)")->allow_extra_args(false);
  cmd->add_option("--seed", c.seed, "Noise seed");
  cmd->add_option("--output-dir", c.output_dir, "Directory for output files");
}

ScenarioRequest request_from(const std::string& preset_name, const Common& c) {
  ScenarioRequest r;
  r.preset = preset_name;
  if (!c.config.empty()) r.config_file = fs::path(c.config);
  if (c.seed >= 0) r.seed = static_cast<std::uint64_t>(c.seed);
  r.overrides = c.overrides;
  return r;
}

std::vector<double> parse_values(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigError("sweep value '" + item + "' is not a number");
    }
  }
  return out;
}

}  // namespace

int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Output-constrained active noise control simulator"};
  app.require_subcommand(1);

  std::string preset_name = "custom";
  Common run_opts, analyze_opts, sweep_opts;

  auto* run = app.add_subcommand("run", "Run all (or selected) algorithms on a preset scenario");
  run->add_option("preset", preset_name, "fig2-saturation | fig3-static | fig5-varying | custom")
      ->required();
  add_common(run, run_opts);
  run->add_option("--algorithms", run_opts.algorithms, "Comma-separated subset, e.g. fxlms,2gd");

  std::string analyze_preset = "custom";
  auto* analyze = app.add_subcommand("analyze", "Wiener solutions and stability report");
  analyze->add_option("preset", analyze_preset, "Preset the config file starts from");
  add_common(analyze, analyze_opts);

  std::string parameter, values_text, sweep_preset = "fig3-static";
  auto* sw = app.add_subcommand("sweep", "Sweep one algorithm parameter");
  sw->add_option("parameter", parameter, "mu1_initial | kappa | gamma | varsigma | rho_sq")->required();
  sw->add_option("--values", values_text, "Comma-separated values")->required();
  sw->add_option("--preset", sweep_preset, "Scenario preset");
  add_common(sw, sweep_opts);
  sw->add_option("--algorithms", sweep_opts.algorithms,
                 "Comma-separated subset (default: the scenario's algorithm)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, er;
    const int code = app.exit(e, o, er);
    out << o.str();
    err << er.str();
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*run) {
      const auto scenario = load_scenario(request_from(preset_name, run_opts));
      const auto report =
          run_experiment(scenario, parse_algorithms(run_opts.algorithms), run_opts.output_dir);
      for (const auto& [name, entry] : report.comparison["algorithms"].items()) {
        out << name << ": " << entry["status"].get<std::string>();
        if (entry.contains("final_weights") && entry["final_weights"].size() <= 4) {
          out << " final weights " << entry["final_weights"].dump();
        }
        if (entry.contains("steady_state_error_power")) {
          out << " steady-state error power " << entry["steady_state_error_power"].dump();
        }
        out << "\n";
        if (entry.contains("message")) err << name << ": " << entry["message"].get<std::string>() << "\n";
      }
      out << "wrote " << report.files.size() << " files to " << run_opts.output_dir << "\n";
      return report.any_diverged ? kExitDiverged : kExitOk;
    }
    if (*analyze) {
      const auto scenario = load_scenario(request_from(analyze_preset, analyze_opts));
      const auto report = analyze_scenario(scenario);
      print_analysis(report, out);
      const fs::path dir(analyze_opts.output_dir);
      std::error_code ec;
      fs::create_directories(dir, ec);
      if (ec) throw IoError("cannot create output directory '" + dir.string() + "'");
      harness::write_text(dir / (scenario.name + ".analysis.json"), report.dump(2) + "\n");
      return kExitOk;
    }
    if (*sw) {
      const auto scenario = load_scenario(request_from(sweep_preset, sweep_opts));
      const auto algs = sweep_opts.algorithms.empty()
                            ? std::vector<controllers::Algorithm>{scenario.algorithm.algorithm}
                            : parse_algorithms(sweep_opts.algorithms);
      const auto rows = sweep(scenario, parameter, parse_values(values_text), algs);
      const std::string csv = sweep_csv(parameter, rows);
      const fs::path dir(sweep_opts.output_dir);
      std::error_code ec;
      fs::create_directories(dir, ec);
      if (ec) throw IoError("cannot create output directory '" + dir.string() + "'");
      harness::write_text(dir / (scenario.name + ".sweep." + parameter + ".csv"), csv);
      out << csv;
      bool diverged = false;
      for (const auto& r : rows) diverged = diverged || r.status == "diverged";
      return diverged ? kExitDiverged : kExitOk;
    }
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << "\n";
    return kExitIo;
  } catch (const DivergenceError& e) {
    err << "diverged: " << e.what() << "\n";
    return kExitDiverged;
  } catch (const DataError& e) {
    err << "data error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitFailure;
}

}  // namespace ancsim::cli
