#include "ancsim/analysis/stability.hpp"

#include <algorithm>
#include <cmath>

#include "ancsim/errors.hpp"

namespace ancsim::analysis {

StabilityReport stability_bounds(const Matrix& R_xprime, double kappa, double varsigma,
                                 std::optional<double> mu1) {
  if (!(std::abs(kappa) < 1.0)) throw ConfigError("stability_bounds: |kappa| must be < 1");
  if (!(varsigma >= 0.0)) throw ConfigError("stability_bounds: varsigma must be >= 0");
  const auto eig = eigen_symmetric(R_xprime);
  StabilityReport rep;
  rep.kappa = kappa;
  rep.varsigma = varsigma;
  rep.mu1 = mu1;
  rep.lambda_min = std::max(eig.values.front(), 0.0);
  rep.lambda_max = std::max(eig.values.back(), 0.0);
  if (rep.lambda_max > 0.0) {
    rep.mu1_bound = (1.0 + kappa) / rep.lambda_max;
    rep.mu2_bound = 1.0 / rep.lambda_max;
  } else {
    rep.mu1_bound = rep.mu2_bound = INFINITY;
  }
  if (mu1) {
    rep.mu1_within_bound = *mu1 > 0.0 && *mu1 < rep.mu1_bound;
    rep.varsigma_mu1_within_bound = varsigma * *mu1 < rep.mu2_bound;
    if (*mu1 > 0.0 && kappa > -0.5) {
      for (double lambda : eig.values) {
        rep.time_constants.push_back(lambda > 0.0 ? time_constant(*mu1, kappa, lambda) : INFINITY);
      }
    }
  }
  return rep;
}

StabilityReport stability_bounds(const CorrelationModel& model, double kappa, double varsigma,
                                 std::optional<double> mu1) {
  return stability_bounds(model.R_xprime, kappa, varsigma, mu1);
}

double time_constant(double mu1, double kappa, double lambda_min) {
  if (!(mu1 > 0.0) || !(lambda_min > 0.0)) {
    throw ConfigError("time_constant: mu1 and lambda_min must be > 0");
  }
  if (!(kappa > -0.5 && kappa < 1.0)) throw ConfigError("time_constant: kappa must lie in (-1/2, 1)");
  return ((1.0 + kappa) / (1.0 + 2.0 * kappa)) / (2.0 * mu1 * lambda_min);
}

}  // namespace ancsim::analysis
