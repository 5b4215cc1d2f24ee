#pragma once

#include <cstddef>
#include <string_view>

namespace ancsim::controllers {

enum class Algorithm { fxlms, rescaling, two_gd, two_gd_momentum };

/// How E[y²(n)] is estimated for branch selection.
///  - smoothed:  Ê ← α·Ê + (1−α)·y²
///  - projected: Ê = wᵀR̂ₓw, R̂ₓ from bias-corrected exponential lag estimates
enum class PowerEstimator { smoothed, projected };

/// Momentum accumulator handling when the lower (output-power) branch runs.
enum class MomentumOnSwitch { reset, freeze, decay };

/// floor: μ₁ ← max(γμ₁, μ_min). literal_min: μ₁ ← min(γμ₁, μ_min), which
/// drops μ₁ to at most μ_min on the first lower-branch sample.
enum class StepFloorRule { floor, literal_min };

enum class VarsigmaMode { fixed, derived };

/// Lagrangian factor ς. In derived mode `value` is filled in by the harness
/// (lagrangian_factor) before a run and persisted with the resolved config.
struct VarsigmaSetting {
  VarsigmaMode mode = VarsigmaMode::fixed;
  double value = 0.85;
};

struct AlgorithmConfig {
  Algorithm algorithm = Algorithm::two_gd_momentum;
  double mu1_initial = 1e-5;
  double mu_min = 1e-6;
  double gamma = 0.9;
  double kappa = 0.99;
  double rho_sq = 1.0;
  VarsigmaSetting varsigma;
  double power_smoothing = 0.99;
  PowerEstimator power_estimator = PowerEstimator::smoothed;
  double correlation_smoothing = 0.9999;
  std::size_t projection_interval = 1;
  MomentumOnSwitch momentum_on_switch = MomentumOnSwitch::reset;
  StepFloorRule step_floor_rule = StepFloorRule::floor;

  /// Throws ConfigError naming the first violated invariant.
  void validate() const;
};

std::string_view to_string(Algorithm a) noexcept;
std::string_view to_string(PowerEstimator e) noexcept;
std::string_view to_string(MomentumOnSwitch m) noexcept;
std::string_view to_string(StepFloorRule r) noexcept;
std::string_view to_string(VarsigmaMode m) noexcept;

Algorithm algorithm_from_string(std::string_view name);
PowerEstimator power_estimator_from_string(std::string_view name);
MomentumOnSwitch momentum_on_switch_from_string(std::string_view name);
StepFloorRule step_floor_rule_from_string(std::string_view name);
VarsigmaMode varsigma_mode_from_string(std::string_view name);

}  // namespace ancsim::controllers
