#include "ancsim/analysis/wiener.hpp"

#include "ancsim/errors.hpp"

namespace ancsim::analysis {

std::vector<double> wiener_optimal(const CorrelationModel& model) {
  model.validate();
  return solve_spd(model.R_xprime, model.P_dxprime).x;
}

std::vector<double> wiener_suboptimal(const CorrelationModel& model, double varsigma,
                                      SuboptimalVariant variant) {
  if (!(varsigma >= 0.0)) throw ConfigError("wiener_suboptimal: varsigma must be >= 0");
  model.validate();
  const Matrix a = model.R_x * varsigma + model.R_xprime;
  const auto& rhs = variant == SuboptimalVariant::reference ? model.P_dx : model.P_dxprime;
  return solve_spd(a, rhs).x;
}

}  // namespace ancsim::analysis
