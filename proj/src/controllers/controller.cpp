#include "ancsim/controllers/controller.hpp"

#include "ancsim/controllers/steps.hpp"

namespace ancsim::controllers {

Controller::Controller(AlgorithmConfig config, std::size_t taps)
    : config_((config.validate(), config)),
      state_(taps, config_.mu1_initial),
      tracker_(config_, taps) {}

double Controller::output(std::span<const double> x) const {
  double y = 0.0;
  for (std::size_t k = 0; k < state_.taps(); ++k) y += state_.weights[k] * x[k];
  return y;
}

Branch Controller::advance(std::span<const double> x, std::span<const double> xprime, double e,
                           double y) {
  tracker_.update(state_, x, y);
  return step(state_, config_, x, xprime, e);
}

}  // namespace ancsim::controllers
