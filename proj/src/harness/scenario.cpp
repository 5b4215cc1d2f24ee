#include "ancsim/harness/scenario.hpp"

#include <cmath>
#include <string>

#include "ancsim/errors.hpp"

namespace ancsim::harness {

void ScenarioConfig::validate() const {
  noise.validate();
  algorithm.validate();
  if (saturation) saturation->validate();
  if (!(noise_gain >= 0.0) || !std::isfinite(noise_gain)) {
    throw ConfigError("noise_gain must be finite and >= 0");
  }
  if (n_samples < 1) throw ConfigError("n_samples must be >= 1");
  if (filter_length < 1) throw ConfigError("filter_length must be >= 1");
  if (record_stride < 1) throw ConfigError("record_stride must be >= 1");
  if (sigma_d_sq && !(*sigma_d_sq > 0.0)) throw ConfigError("sigma_d_sq must be > 0");
  if (preamble_samples < 1) throw ConfigError("preamble_samples must be >= 1");
  for (std::size_t k = 0; k < path_changes.size(); ++k) {
    const auto& c = path_changes[k];
    if (c.sample_index >= n_samples) {
      throw ConfigError("path_changes[" + std::to_string(k) + "].sample_index must be < n_samples");
    }
    if (k > 0 && c.sample_index <= path_changes[k - 1].sample_index) {
      throw ConfigError("path_changes indices must be strictly increasing");
    }
    if (c.noise_gain && (!(*c.noise_gain >= 0.0) || !std::isfinite(*c.noise_gain))) {
      throw ConfigError("path_changes[" + std::to_string(k) + "].noise_gain must be >= 0");
    }
  }
}

}  // namespace ancsim::harness
