#include "ancsim/controllers/state.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ancsim/errors.hpp"

namespace ancsim::controllers {

std::string_view to_string(Branch b) noexcept { return b == Branch::within ? "within" : "exceeded"; }

Branch branch_from_string(std::string_view name) {
  if (name == "within") return Branch::within;
  if (name == "exceeded") return Branch::exceeded;
  throw DataError("unknown branch '" + std::string(name) + "'");
}

ControllerState::ControllerState(std::size_t taps, double mu1_initial)
    : weights(taps, 0.0), momentum(taps, 0.0), step_size(mu1_initial) {
  if (taps == 0) throw ConfigError("controller needs at least one tap");
}

void ControllerState::validate() const {
  auto finite = [](double v) { return std::isfinite(v); };
  if (weights.size() != momentum.size()) throw DataError("weights and momentum differ in length");
  if (!std::all_of(weights.begin(), weights.end(), finite)) throw DataError("non-finite weight");
  if (!std::all_of(momentum.begin(), momentum.end(), finite)) {
    throw DataError("non-finite momentum entry");
  }
  if (!(step_size >= 0.0) || !std::isfinite(step_size)) throw DataError("invalid step size");
  if (!(output_power_estimate >= 0.0)) throw DataError("negative output power estimate");
}

}  // namespace ancsim::controllers
