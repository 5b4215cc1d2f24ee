#pragma once

#include <span>

#include "ancsim/controllers/config.hpp"
#include "ancsim/controllers/state.hpp"

namespace ancsim::controllers {

/// α·previous + (1−α)·y². Requires 0 < α < 1.
double estimate_output_power(double previous, double y, double alpha);

/// w ← w + μ₁·e·x′. Momentum and μ₁ untouched. Always Branch::within.
/// Throws DivergenceError when e or an updated weight is non-finite.
Branch step_fxlms(ControllerState& state, std::span<const double> xprime, double e);

/// Two-gradient-direction update with variable step size. The branch is chosen
/// from state.output_power_estimate against ρ²; the lower branch descends y²
/// along the unfiltered reference: w ← w − ςμ₁·y·x, then μ₁ decays.
Branch step_2gd(ControllerState& state, const AlgorithmConfig& config,
                std::span<const double> x, std::span<const double> xprime, double e);

/// 2GD with the momentum accumulator on the upper branch:
/// ζ ← κζ + μ₁·e·x′, w ← w + ζ. The lower branch is the 2GD lower branch,
/// followed by config.momentum_on_switch applied to ζ.
Branch step_2gd_momentum(ControllerState& state, const AlgorithmConfig& config,
                         std::span<const double> x, std::span<const double> xprime, double e);

/// FXLMS update, then if Ê > ρ² the weights are scaled by √(ρ²/Ê) and the
/// estimate becomes ρ² (the projected power of the scaled filter).
Branch step_rescaling(ControllerState& state, const AlgorithmConfig& config,
                      std::span<const double> x, std::span<const double> xprime, double e);

/// Dispatch on config.algorithm.
Branch step(ControllerState& state, const AlgorithmConfig& config, std::span<const double> x,
            std::span<const double> xprime, double e);

/// ς = G_s·(η − 1) with η² = max(σ_d²/(G_s·ρ²), 1). Zero whenever
/// σ_d² ≤ G_s·ρ². Throws ConfigError on non-positive inputs.
double lagrangian_factor(double secondary_power_gain, double disturbance_power, double rho_sq);

}  // namespace ancsim::controllers
