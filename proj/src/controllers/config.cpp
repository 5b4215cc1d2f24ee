#include "ancsim/controllers/config.hpp"

#include <cmath>
#include <string>

#include "ancsim/errors.hpp"

namespace ancsim::controllers {

namespace {

void require(bool ok, const char* message) {
  if (!ok) throw ConfigError(message);
}

}  // namespace

void AlgorithmConfig::validate() const {
  require(std::isfinite(mu1_initial) && mu1_initial >= 0.0,
          "algorithm.mu1_initial must be finite and >= 0");
  require(std::isfinite(mu_min) && mu_min >= 0.0, "algorithm.mu_min must be finite and >= 0");
  require(mu_min <= mu1_initial, "algorithm.mu_min must not exceed algorithm.mu1_initial");
  require(gamma > 0.0 && gamma < 1.0, "algorithm.gamma must lie in (0, 1)");
  require(std::abs(kappa) < 1.0, "algorithm.kappa must satisfy |kappa| < 1");
  require(std::isfinite(rho_sq) && rho_sq > 0.0, "algorithm.rho_sq must be finite and > 0");
  require(std::isfinite(varsigma.value) && varsigma.value >= 0.0,
          "algorithm.varsigma must be finite and >= 0");
  require(power_smoothing > 0.0 && power_smoothing < 1.0,
          "algorithm.power_smoothing must lie in (0, 1)");
  require(correlation_smoothing > 0.0 && correlation_smoothing < 1.0,
          "algorithm.correlation_smoothing must lie in (0, 1)");
  require(projection_interval >= 1, "algorithm.projection_interval must be >= 1");
}

std::string_view to_string(Algorithm a) noexcept {
  switch (a) {
    case Algorithm::fxlms: return "fxlms";
    case Algorithm::rescaling: return "rescaling";
    case Algorithm::two_gd: return "2gd";
    case Algorithm::two_gd_momentum: return "2gd-momentum-vss";
  }
  return "?";
}

std::string_view to_string(PowerEstimator e) noexcept {
  return e == PowerEstimator::smoothed ? "smoothed" : "projected";
}

std::string_view to_string(MomentumOnSwitch m) noexcept {
  switch (m) {
    case MomentumOnSwitch::reset: return "reset";
    case MomentumOnSwitch::freeze: return "freeze";
    case MomentumOnSwitch::decay: return "decay";
  }
  return "?";
}

std::string_view to_string(StepFloorRule r) noexcept {
  return r == StepFloorRule::floor ? "floor" : "literal-min";
}

std::string_view to_string(VarsigmaMode m) noexcept {
  return m == VarsigmaMode::fixed ? "fixed" : "derived";
}

Algorithm algorithm_from_string(std::string_view name) {
  if (name == "fxlms") return Algorithm::fxlms;
  if (name == "rescaling") return Algorithm::rescaling;
  if (name == "2gd") return Algorithm::two_gd;
  if (name == "2gd-momentum-vss" || name == "2gd-momentum") return Algorithm::two_gd_momentum;
  throw ConfigError("unknown algorithm '" + std::string(name) + "'");
}

PowerEstimator power_estimator_from_string(std::string_view name) {
  if (name == "smoothed") return PowerEstimator::smoothed;
  if (name == "projected") return PowerEstimator::projected;
  throw ConfigError("unknown power estimator '" + std::string(name) + "'");
}

MomentumOnSwitch momentum_on_switch_from_string(std::string_view name) {
  if (name == "reset") return MomentumOnSwitch::reset;
  if (name == "freeze") return MomentumOnSwitch::freeze;
  if (name == "decay") return MomentumOnSwitch::decay;
  throw ConfigError("unknown momentum_on_switch '" + std::string(name) + "'");
}

StepFloorRule step_floor_rule_from_string(std::string_view name) {
  if (name == "floor") return StepFloorRule::floor;
  if (name == "literal-min") return StepFloorRule::literal_min;
  throw ConfigError("unknown step_floor_rule '" + std::string(name) + "'");
}

VarsigmaMode varsigma_mode_from_string(std::string_view name) {
  if (name == "fixed") return VarsigmaMode::fixed;
  if (name == "derived") return VarsigmaMode::derived;
  throw ConfigError("unknown varsigma mode '" + std::string(name) + "'");
}

}  // namespace ancsim::controllers
