#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "ancsim/controllers/config.hpp"
#include "ancsim/controllers/state.hpp"

namespace ancsim::controllers {

/// Maintains ControllerState::output_power_estimate for the configured
/// estimator. Call once per sample before the update step.
class OutputPowerTracker {
 public:
  OutputPowerTracker(const AlgorithmConfig& config, std::size_t taps);
  ~OutputPowerTracker();
  OutputPowerTracker(OutputPowerTracker&&) noexcept;
  OutputPowerTracker& operator=(OutputPowerTracker&&) noexcept;

  /// `x` is the reference window (newest first, at least `taps` long) and `y`
  /// the unsaturated control output for this sample.
  void update(ControllerState& state, std::span<const double> x, double y);

  /// Current lag estimates r̂(0..taps−1) (projected mode only; bias-corrected).
  std::vector<double> lag_estimates() const;

 private:
  class Projector;

  PowerEstimator kind_;
  double alpha_;
  double beta_;
  std::size_t interval_;
  std::size_t samples_ = 0;
  double beta_pow_ = 1.0;
  std::vector<double> lags_;
  std::unique_ptr<Projector> projector_;
};

/// wᵀRw for symmetric Toeplitz R given by lags r(0..L−1).
double toeplitz_quadratic_form(std::span<const double> lags, std::span<const double> w);

}  // namespace ancsim::controllers
