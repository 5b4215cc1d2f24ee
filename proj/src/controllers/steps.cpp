#include "ancsim/controllers/steps.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ancsim/errors.hpp"

namespace ancsim::controllers {

namespace {

void check_lengths(const ControllerState& state, std::span<const double> v, const char* name) {
  if (v.size() < state.taps()) {
    throw DataError(std::string(name) + " holds " + std::to_string(v.size()) +
                    " samples, controller has " + std::to_string(state.taps()) + " taps");
  }
}

void check_error(double e) {
  if (!std::isfinite(e)) throw DivergenceError("non-finite error sample");
}

void check_weights(const ControllerState& state) {
  for (double w : state.weights) {
    if (!std::isfinite(w)) throw DivergenceError("non-finite control weight");
  }
}

double output_of(const ControllerState& state, std::span<const double> x) {
  double y = 0.0;
  for (std::size_t k = 0; k < state.taps(); ++k) y += state.weights[k] * x[k];
  return y;
}

void gradient_step(ControllerState& state, std::span<const double> xprime, double e) {
  const double g = state.step_size * e;
  for (std::size_t k = 0; k < state.taps(); ++k) state.weights[k] += g * xprime[k];
}

void decay_step_size(ControllerState& state, const AlgorithmConfig& config) {
  const double next = config.gamma * state.step_size;
  state.step_size = config.step_floor_rule == StepFloorRule::floor ? std::max(next, config.mu_min)
                                                                   : std::min(next, config.mu_min);
}

void lower_branch(ControllerState& state, const AlgorithmConfig& config,
                  std::span<const double> x) {
  const double y = output_of(state, x);
  const double g = config.varsigma.value * state.step_size * y;
  for (std::size_t k = 0; k < state.taps(); ++k) state.weights[k] -= g * x[k];
  decay_step_size(state, config);
}

Branch select(const ControllerState& state, const AlgorithmConfig& config) {
  return state.output_power_estimate <= config.rho_sq ? Branch::within : Branch::exceeded;
}

}  // namespace

double estimate_output_power(double previous, double y, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("power smoothing must lie in (0, 1)");
  return alpha * previous + (1.0 - alpha) * y * y;
}

Branch step_fxlms(ControllerState& state, std::span<const double> xprime, double e) {
  check_lengths(state, xprime, "filtered reference");
  check_error(e);
  gradient_step(state, xprime, e);
  check_weights(state);
  return Branch::within;
}

Branch step_2gd(ControllerState& state, const AlgorithmConfig& config, std::span<const double> x,
                std::span<const double> xprime, double e) {
  check_lengths(state, x, "reference");
  check_lengths(state, xprime, "filtered reference");
  check_error(e);
  const Branch branch = select(state, config);
  if (branch == Branch::within) {
    gradient_step(state, xprime, e);
  } else {
    lower_branch(state, config, x);
  }
  check_weights(state);
  return branch;
}

Branch step_2gd_momentum(ControllerState& state, const AlgorithmConfig& config,
                         std::span<const double> x, std::span<const double> xprime, double e) {
  check_lengths(state, x, "reference");
  check_lengths(state, xprime, "filtered reference");
  check_error(e);
  const Branch branch = select(state, config);
  if (branch == Branch::within) {
    const double g = state.step_size * e;
    for (std::size_t k = 0; k < state.taps(); ++k) {
      state.momentum[k] = config.kappa * state.momentum[k] + g * xprime[k];
      state.weights[k] += state.momentum[k];
    }
  } else {
    lower_branch(state, config, x);
    switch (config.momentum_on_switch) {
      case MomentumOnSwitch::reset:
        std::fill(state.momentum.begin(), state.momentum.end(), 0.0);
        break;
      case MomentumOnSwitch::freeze:
        break;
      case MomentumOnSwitch::decay:
        for (double& z : state.momentum) z *= config.kappa;
        break;
    }
  }
  check_weights(state);
  return branch;
}

Branch step_rescaling(ControllerState& state, const AlgorithmConfig& config,
                      std::span<const double> /*x*/, std::span<const double> xprime, double e) {
  check_lengths(state, xprime, "filtered reference");
  check_error(e);
  gradient_step(state, xprime, e);
  Branch branch = Branch::within;
  if (state.output_power_estimate > config.rho_sq) {
    const double c = std::sqrt(config.rho_sq / state.output_power_estimate);
    for (double& w : state.weights) w *= c;
    state.output_power_estimate = config.rho_sq;
    branch = Branch::exceeded;
  }
  check_weights(state);
  return branch;
}

Branch step(ControllerState& state, const AlgorithmConfig& config, std::span<const double> x,
            std::span<const double> xprime, double e) {
  switch (config.algorithm) {
    case Algorithm::fxlms: return step_fxlms(state, xprime, e);
    case Algorithm::rescaling: return step_rescaling(state, config, x, xprime, e);
    case Algorithm::two_gd: return step_2gd(state, config, x, xprime, e);
    case Algorithm::two_gd_momentum: return step_2gd_momentum(state, config, x, xprime, e);
  }
  throw ConfigError("unhandled algorithm");
}

double lagrangian_factor(double secondary_power_gain, double disturbance_power, double rho_sq) {
  if (!(secondary_power_gain > 0.0) || !(disturbance_power > 0.0) || !(rho_sq > 0.0)) {
    throw ConfigError("lagrangian_factor: G_s, sigma_d^2 and rho^2 must all be > 0");
  }
  const double ratio = disturbance_power / (secondary_power_gain * rho_sq);
  if (ratio <= 1.0) return 0.0;
  return secondary_power_gain * (std::sqrt(ratio) - 1.0);
}

}  // namespace ancsim::controllers
