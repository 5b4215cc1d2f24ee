#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ancsim/acoustics/fir_path.hpp"
#include "ancsim/acoustics/noise.hpp"
#include "ancsim/acoustics/saturation.hpp"
#include "ancsim/controllers/config.hpp"

namespace ancsim::harness {

/// Instantaneous environment change applied before sample `sample_index`.
struct PathChange {
  std::size_t sample_index = 0;
  acoustics::FirPath primary_path = acoustics::FirPath::identity();
  acoustics::FirPath secondary_path = acoustics::FirPath::identity();
  std::optional<double> noise_gain;  // reference amplitude from this sample on
};

struct ScenarioConfig {
  std::string name = "custom";
  acoustics::NoiseSource noise;
  double noise_gain = 1.0;  // amplitude multiplier on the generated reference
  acoustics::FirPath primary_path = acoustics::FirPath::identity();
  acoustics::FirPath secondary_path = acoustics::FirPath::identity();
  acoustics::FirPath secondary_model = acoustics::FirPath::identity();
  controllers::AlgorithmConfig algorithm;
  std::optional<acoustics::SaturationModel> saturation;
  std::size_t n_samples = 1;
  std::size_t filter_length = 2;
  std::vector<PathChange> path_changes;
  std::size_t record_stride = 1;
  std::size_t weight_cap = 64;  // weight columns written to the trajectory CSV
  std::optional<double> sigma_d_sq;   // overrides the preamble estimate for derived ς
  std::size_t preamble_samples = 16384;
  bool capture_signals = false;  // keep e(n) and d(n) in the run result
  std::vector<std::string> notes;

  /// Throws ConfigError naming the first violated invariant.
  void validate() const;
};

}  // namespace ancsim::harness
