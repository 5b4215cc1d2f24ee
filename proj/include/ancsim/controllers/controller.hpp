#pragma once

#include <span>

#include "ancsim/controllers/config.hpp"
#include "ancsim/controllers/power_tracker.hpp"
#include "ancsim/controllers/state.hpp"

namespace ancsim::controllers {

/// One adaptive controller: configuration, mutable state and the output-power
/// estimator, advanced one sample at a time.
class Controller {
 public:
  /// `config.varsigma.value` must already be resolved when the mode is derived.
  Controller(AlgorithmConfig config, std::size_t taps);

  /// Control output y(n) = wᵀx(n) for the reference window `x` (newest first).
  double output(std::span<const double> x) const;

  /// Refreshes Ê[y²(n)] with the current sample and applies the update law.
  Branch advance(std::span<const double> x, std::span<const double> xprime, double e, double y);

  const ControllerState& state() const noexcept { return state_; }
  ControllerState& state() noexcept { return state_; }
  const AlgorithmConfig& config() const noexcept { return config_; }

 private:
  AlgorithmConfig config_;
  ControllerState state_;
  OutputPowerTracker tracker_;
};

}  // namespace ancsim::controllers
