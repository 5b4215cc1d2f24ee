#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

namespace ancsim::controllers {

/// Which update direction ran for a sample.
enum class Branch { within, exceeded };

std::string_view to_string(Branch b) noexcept;
Branch branch_from_string(std::string_view name);

struct ControllerState {
  std::vector<double> weights;   // w(n), length L_f
  std::vector<double> momentum;  // ζ(n), same length
  double step_size = 0.0;        // μ₁(n)
  double output_power_estimate = 0.0;

  ControllerState() = default;
  /// Zero weights and momentum, μ₁ = mu1_initial.
  ControllerState(std::size_t taps, double mu1_initial);

  std::size_t taps() const noexcept { return weights.size(); }

  /// Throws DataError on mismatched lengths, non-finite entries, μ₁ < 0 or
  /// a negative power estimate.
  void validate() const;
};

}  // namespace ancsim::controllers
