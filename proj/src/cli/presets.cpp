#include "ancsim/cli/presets.hpp"

#include <string>

#include "ancsim/acoustics/noise.hpp"
#include "ancsim/errors.hpp"

namespace ancsim::cli {

using controllers::Algorithm;
using controllers::PowerEstimator;
using harness::ScenarioConfig;

namespace {

controllers::AlgorithmConfig reference_parameters() {
  controllers::AlgorithmConfig a;
  a.algorithm = Algorithm::two_gd_momentum;
  a.mu1_initial = 1e-5;
  a.mu_min = 1e-6;
  a.gamma = 0.9;
  a.kappa = 0.99;
  a.varsigma = {controllers::VarsigmaMode::fixed, 0.85};
  a.power_estimator = PowerEstimator::projected;
  a.correlation_smoothing = 0.9999;
  a.projection_interval = 1;
  return a;
}

ScenarioConfig fig3_static() {
  ScenarioConfig c;
  c.name = "fig3-static";
  c.noise.kind = acoustics::NoiseKind::white_gaussian;
  c.noise.variance = 1.0;
  c.noise.seed = 1;
  c.primary_path = acoustics::FirPath({1.76, 1.25});
  c.secondary_path = acoustics::FirPath::identity();
  c.secondary_model = acoustics::FirPath::identity();
  c.algorithm = reference_parameters();
  c.algorithm.rho_sq = 1.21;
  c.filter_length = 2;
  c.n_samples = 600000;
  c.record_stride = 20;
  c.notes = {
      "identity secondary path and model so that the Wiener solution equals the primary path "
      "[1.76, 1.25]; a non-trivial secondary path such as [0.13, 0.87] moves the optimum away from it",
      "rho_sq = 1.21 places the constrained optimum at [0.897, 0.637]",
      "momentum accumulator is reset whenever the output-power branch runs"};
  return c;
}

ScenarioConfig fig5_varying() {
  ScenarioConfig c = fig3_static();
  c.name = "fig5-varying";
  c.n_samples = 1200000;
  harness::PathChange change;
  change.sample_index = 600000;
  change.primary_path = acoustics::FirPath({2.1, 1.5});
  change.secondary_path = acoustics::FirPath::identity();
  change.noise_gain = 0.55;
  c.path_changes = {change};
  c.notes.push_back(
      "the change lowers the reference amplitude to 0.55 so the constraint boundary moves; a "
      "path change alone leaves wT R_x w = rho_sq unchanged");
  return c;
}

ScenarioConfig fig2_saturation() {
  ScenarioConfig c;
  c.name = "fig2-saturation";
  c.noise.kind = acoustics::NoiseKind::band_limited;
  c.noise.band = acoustics::FrequencyBand{200.0, 800.0};
  c.noise.variance = 1.0;
  c.noise.sample_rate = 16000.0;
  c.noise.seed = 7;
  const acoustics::FrequencyBand band{200.0, 800.0};
  auto scaled = [&](const acoustics::FirPath& p, double in_band_gain) {
    const double g = in_band_gain / acoustics::band_rms_gain(p, band, c.noise.sample_rate);
    std::vector<double> v(p.coefficients().begin(), p.coefficients().end());
    for (double& x : v) x *= g;
    return acoustics::FirPath(std::move(v));
  };
  c.secondary_path = scaled(acoustics::synthetic_path(64, 3, 6.0, 101), 1.0);
  c.secondary_model = c.secondary_path;
  c.primary_path = scaled(acoustics::synthetic_path(64, 10, 10.0, 202), 0.3);
  c.algorithm = reference_parameters();
  c.algorithm.rho_sq = 0.04;
  c.saturation = acoustics::SaturationModel{1.0, acoustics::SaturationMode::symmetric};
  c.filter_length = 512;
  c.n_samples = 200000;
  c.record_stride = 16;
  c.capture_signals = true;
  c.notes = {"synthetic 64-tap primary and secondary paths (seeded) replace the unpublished "
             "air-duct measurements",
             "momentum accumulator is reset whenever the output-power branch runs"};
  return c;
}

}  // namespace

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = {"fig2-saturation", "fig3-static",
                                                 "fig5-varying", "custom"};
  return names;
}

ScenarioConfig preset(std::string_view name) {
  if (name == "fig3-static") return fig3_static();
  if (name == "fig5-varying") return fig5_varying();
  if (name == "fig2-saturation") return fig2_saturation();
  if (name == "custom") {
    ScenarioConfig c;
    c.algorithm = reference_parameters();
    c.n_samples = 100000;
    return c;
  }
  throw ConfigError("unknown preset '" + std::string(name) + "'");
}

const std::vector<Algorithm>& all_algorithms() {
  static const std::vector<Algorithm> algs = {Algorithm::fxlms, Algorithm::rescaling,
                                              Algorithm::two_gd, Algorithm::two_gd_momentum};
  return algs;
}

}  // namespace ancsim::cli
