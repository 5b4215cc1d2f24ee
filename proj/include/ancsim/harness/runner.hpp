#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ancsim/controllers/state.hpp"
#include "ancsim/harness/scenario.hpp"

namespace ancsim::harness {

struct TrajectoryRecord {
  std::size_t sample_index = 0;
  std::vector<double> weights;
  double error = 0.0;
  double output = 0.0;
  double power_estimate = 0.0;
  double step_size = 0.0;
  controllers::Branch branch = controllers::Branch::within;

  bool operator==(const TrajectoryRecord&) const = default;
};

enum class RunStatus { completed, diverged };

std::string_view to_string(RunStatus s) noexcept;

/// Statistics of one stationary stretch [start, end) between path changes.
/// Steady-state values average the final 20% of the stretch.
struct PhaseSummary {
  std::size_t start = 0;
  std::size_t end = 0;
  std::vector<double> final_weights;
  double steady_state_error_power = 0.0;
  double steady_state_output_power = 0.0;
  double steady_state_power_estimate = 0.0;
  std::vector<double> weight_mean;
  std::vector<double> weight_std;
  /// Samples from the phase start until ‖w − w_final‖ stays within 5% of
  /// ‖w_final‖, resolved on the recorded samples.
  std::size_t convergence_samples = 0;
  std::size_t exceeded_count = 0;
};

struct RunSummary {
  RunStatus status = RunStatus::completed;
  std::string message;
  std::size_t samples_run = 0;
  std::vector<double> final_weights;
  double final_step_size = 0.0;
  double varsigma = 0.0;                 // ς used by the update law
  std::optional<double> sigma_d_sq;      // disturbance power when ς was derived
  std::vector<PhaseSummary> phases;      // one per stationary stretch

  const PhaseSummary& last_phase() const { return phases.back(); }
};

struct RunResult {
  ScenarioConfig config;  // resolved (derived ς filled in)
  std::vector<TrajectoryRecord> trajectory;
  RunSummary summary;
  std::vector<double> error_signal;        // filled when config.capture_signals
  std::vector<double> disturbance_signal;  // idem
};

/// Fills in the derived Lagrangian factor (if configured) and returns the
/// config the sample loop will use. σ_d² is the override or the sample
/// variance of d(n) over the preamble.
ScenarioConfig resolve(const ScenarioConfig& config, std::optional<double>* sigma_d_sq = nullptr);

/// Runs the sample loop. Divergence ends the run early with status diverged
/// and a partial trajectory.
RunResult run_scenario(const ScenarioConfig& config);

/// run_scenario for configs with a non-empty path-change schedule; throws
/// ConfigError otherwise.
RunResult run_varying_environment(const ScenarioConfig& config);

}  // namespace ancsim::harness
