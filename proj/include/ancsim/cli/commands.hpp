#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "ancsim/controllers/config.hpp"
#include "ancsim/harness/scenario.hpp"
#include "json.hpp"

namespace ancsim::cli {

/// Exit codes shared by every subcommand.
enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitConfig = 2,
  kExitDiverged = 3,
  kExitIo = 4,
};

struct ScenarioRequest {
  std::string preset = "custom";
  std::optional<std::filesystem::path> config_file;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> overrides;  // "key=value"
};

/// Preset defaults, then the config file, then --set overrides, then --seed.
harness::ScenarioConfig load_scenario(const ScenarioRequest& request);

/// Parses "fxlms,2gd" (also accepts "all"). Empty input means all four.
std::vector<controllers::Algorithm> parse_algorithms(const std::string& list);

struct RunReport {
  nlohmann::json comparison;
  bool any_diverged = false;
  std::vector<std::filesystem::path> files;
};

/// Runs each algorithm on the scenario and writes per-algorithm trajectory and
/// summary files, boundary files (two-weight scenarios), a PSD CSV (when the
/// scenario captures signals) and <name>.comparison.json.
RunReport run_experiment(const harness::ScenarioConfig& scenario,
                         const std::vector<controllers::Algorithm>& algorithms,
                         const std::filesystem::path& output_dir);

/// Correlation statistics, Wiener solutions and stability bounds for every
/// environment of the scenario, estimated from a simulated reference.
nlohmann::json analyze_scenario(const harness::ScenarioConfig& scenario);

/// Human-readable rendering of analyze_scenario's report.
void print_analysis(const nlohmann::json& report, std::ostream& out);

inline const std::vector<std::string> kSweepParameters = {"mu1_initial", "kappa", "gamma",
                                                          "varsigma", "rho_sq"};

struct SweepRow {
  double value = 0.0;
  controllers::Algorithm algorithm = controllers::Algorithm::two_gd_momentum;
  std::string status;
  double steady_state_error_power = 0.0;
  double steady_state_output_power = 0.0;
  std::size_t convergence_samples = 0;
  std::size_t constraint_violations = 0;
};

/// One run per (value, algorithm), executed in parallel across values. Throws
/// ConfigError for parameters outside kSweepParameters.
std::vector<SweepRow> sweep(const harness::ScenarioConfig& scenario, const std::string& parameter,
                            const std::vector<double>& values,
                            const std::vector<controllers::Algorithm>& algorithms);

std::string sweep_csv(const std::string& parameter, const std::vector<SweepRow>& rows);

/// Full command-line entry point (argv[0] is the program name).
int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace ancsim::cli
