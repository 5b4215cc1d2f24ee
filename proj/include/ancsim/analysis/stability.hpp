#pragma once

#include <optional>
#include <vector>

#include "ancsim/analysis/correlation.hpp"
#include "ancsim/analysis/linalg.hpp"

namespace ancsim::analysis {

struct StabilityReport {
  double lambda_max = 0.0;
  double lambda_min = 0.0;
  double mu1_bound = 0.0;  // (1+κ)/λ_max
  double mu2_bound = 0.0;  // 1/λ_max, bound on ς·μ₁
  double kappa = 0.0;
  double varsigma = 0.0;
  std::optional<double> mu1;            // step size the report was evaluated at
  std::vector<double> time_constants;   // one per eigenvalue of R_x′ (needs mu1)
  bool mu1_within_bound = true;
  bool varsigma_mu1_within_bound = true;

  bool stable() const noexcept { return mu1_within_bound && varsigma_mu1_within_bound; }
};

/// Bounds from the eigenvalues of R_x′. Throws DataError for asymmetric input
/// and ConfigError for |κ| ≥ 1 or ς < 0.
StabilityReport stability_bounds(const Matrix& R_xprime, double kappa, double varsigma,
                                 std::optional<double> mu1 = std::nullopt);
StabilityReport stability_bounds(const CorrelationModel& model, double kappa, double varsigma,
                                 std::optional<double> mu1 = std::nullopt);

/// τ = ((1+κ)/(1+2κ)) / (2·μ₁·λ). Throws ConfigError unless μ₁ > 0, λ > 0
/// and −½ < κ < 1.
double time_constant(double mu1, double kappa, double lambda_min);

}  // namespace ancsim::analysis
