#include "ancsim/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <sstream>

#include "ancsim/acoustics/noise.hpp"
#include "ancsim/analysis/correlation.hpp"
#include "ancsim/analysis/spectral.hpp"
#include "ancsim/analysis/stability.hpp"
#include "ancsim/analysis/wiener.hpp"
#include "ancsim/cli/presets.hpp"
#include "ancsim/controllers/steps.hpp"
#include "ancsim/errors.hpp"
#include "ancsim/harness/config_json.hpp"
#include "ancsim/harness/persist.hpp"
#include "ancsim/harness/runner.hpp"

namespace ancsim::cli {

namespace fs = std::filesystem;
using controllers::Algorithm;
using nlohmann::json;

namespace {

constexpr std::size_t kAnalysisSamples = 1 << 17;
constexpr std::size_t kPsdSegment = 4096;

json reals(const std::vector<double>& v) {
  json a = json::array();
  for (double x : v) a.push_back(std::isfinite(x) ? json(x) : json(nullptr));
  return a;
}

json real_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

struct BandMetrics {
  double in_band_db;
  double low_band_db;
  double high_band_db;
  double worst_out_of_band_bin_db;
};

BandMetrics band_metrics(const analysis::PowerSpectrum& e, const analysis::PowerSpectrum& d) {
  auto rel = [&](double lo, double hi) {
    return analysis::to_db(e.band_power(lo, hi) / d.band_power(lo, hi));
  };
  double worst = -INFINITY;
  for (std::size_t k = 0; k < e.frequencies.size(); ++k) {
    const double f = e.frequencies[k];
    if (f <= 150.0 || f >= 1000.0) {
      worst = std::max(worst, analysis::to_db(e.density[k]) - analysis::to_db(d.density[k]));
    }
  }
  return {rel(200.0, 800.0), rel(0.0, 150.0), rel(1000.0, 8000.0), worst};
}

// Unconstrained and constrained optima per environment from the exact
// correlation model; these are the markers drawn on weight-path figures.
json reference_optima(const harness::ScenarioConfig& scenario) {
  struct Env {
    std::size_t start;
    acoustics::FirPath primary;
    double gain;
  };
  std::vector<Env> envs{{0, scenario.primary_path, scenario.noise_gain}};
  for (const auto& c : scenario.path_changes) {
    envs.push_back({c.sample_index, c.primary_path, c.noise_gain.value_or(envs.back().gain)});
  }
  json out = json::array();
  for (const auto& env : envs) {
    json e{{"start", env.start}};
    const std::size_t lags = scenario.filter_length + env.primary.size() + scenario.secondary_model.size();
    auto rx = acoustics::theoretical_autocorrelation(scenario.noise, lags);
    for (auto& r : rx) r *= env.gain * env.gain;
    double sigma_d = 0.0;
    for (std::size_t i = 0; i < env.primary.size(); ++i) {
      for (std::size_t j = 0; j < env.primary.size(); ++j) {
        sigma_d += env.primary[i] * env.primary[j] * rx[i > j ? i - j : j - i];
      }
    }
    try {
      const auto model = analysis::exact_correlation_model(rx, env.primary, scenario.secondary_model,
                                                           scenario.filter_length);
      const double vs = sigma_d > 0.0 ? controllers::lagrangian_factor(
                                            scenario.secondary_model.power_gain(), sigma_d,
                                            scenario.algorithm.rho_sq)
                                      : 0.0;
      e["w_o"] = reals(analysis::wiener_optimal(model));
      e["w_sub"] = reals(analysis::wiener_suboptimal(model, vs));
      e["varsigma"] = vs;
    } catch (const SingularMatrixError&) {
      e["w_o"] = nullptr;
      e["w_sub"] = nullptr;
    }
    out.push_back(e);
  }
  return out;
}

}  // namespace


harness::ScenarioConfig load_scenario(const ScenarioRequest& request) {
  harness::ScenarioConfig config = preset(request.preset);
  if (request.config_file) {
    const std::string text = harness::read_text(*request.config_file);
    json doc = json::parse(text, nullptr, false);
    if (doc.is_discarded()) {
      throw ConfigError("'" + request.config_file->string() + "' is not valid JSON");
    }
    config = harness::scenario_from_json(doc, config);
  }
  if (!request.overrides.empty()) {
    json doc = harness::to_json(config);
    for (const auto& o : request.overrides) harness::apply_override(doc, o);
    config = harness::scenario_from_json(doc, config);
  }
  if (request.seed) config.noise.seed = *request.seed;
  config.validate();
  return config;
}

std::vector<Algorithm> parse_algorithms(const std::string& list) {
  if (list.empty() || list == "all") return all_algorithms();
  std::vector<Algorithm> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const Algorithm a = controllers::algorithm_from_string(item);
    if (std::find(out.begin(), out.end(), a) == out.end()) out.push_back(a);
  }
  if (out.empty()) throw ConfigError("--algorithms selects nothing");
  return out;
}

RunReport run_experiment(const harness::ScenarioConfig& scenario,
                         const std::vector<Algorithm>& algorithms, const fs::path& output_dir) {
  scenario.validate();
  RunReport report;
  json comparison{{"scenario", harness::to_json(scenario)}, {"algorithms", json::object()}};

  const auto boundaries = harness::write_boundaries(scenario, output_dir, scenario.name);
  report.files.insert(report.files.end(), boundaries.begin(), boundaries.end());
  json boundary_names = json::array();
  for (const auto& b : boundaries) boundary_names.push_back(b.filename().string());
  comparison["boundary_files"] = boundary_names;
  if (scenario.filter_length == 2) comparison["optima"] = reference_optima(scenario);

  std::vector<std::pair<Algorithm, analysis::PowerSpectrum>> spectra;
  std::optional<analysis::PowerSpectrum> disturbance;

  for (Algorithm alg : algorithms) {
    harness::ScenarioConfig cfg = scenario;
    cfg.algorithm.algorithm = alg;
    const std::string label(controllers::to_string(alg));
    auto result = harness::run_scenario(cfg);
    const std::string stem = scenario.name + "." + label;
    const auto files = harness::persist(result, output_dir, stem);
    report.files.push_back(files.trajectory);
    report.files.push_back(files.summary);

    const auto& s = result.summary;
    json entry{{"status", harness::to_string(s.status)},
               {"trajectory_file", files.trajectory.filename().string()},
               {"summary_file", files.summary.filename().string()},
               {"final_weights", reals(s.final_weights)},
               {"varsigma", s.varsigma}};
    json phases = json::array();
    for (const auto& p : s.phases) {
      phases.push_back({{"start", p.start},
                        {"end", p.end},
                        {"final_weights", reals(p.final_weights)},
                        {"steady_state_error_power", real_or_null(p.steady_state_error_power)},
                        {"steady_state_output_power", real_or_null(p.steady_state_output_power)},
                        {"weight_std", reals(p.weight_std)},
                        {"convergence_samples", p.convergence_samples},
                        {"exceeded_count", p.exceeded_count}});
    }
    entry["phases"] = phases;
    if (!s.phases.empty()) {
      entry["steady_state_error_power"] = real_or_null(s.last_phase().steady_state_error_power);
      entry["steady_state_output_power"] = real_or_null(s.last_phase().steady_state_output_power);
      entry["convergence_samples"] = s.last_phase().convergence_samples;
    }
    if (s.status == harness::RunStatus::diverged) {
      report.any_diverged = true;
      entry["message"] = s.message;
    } else if (cfg.capture_signals && result.error_signal.size() >= 4 * kPsdSegment) {
      const std::size_t half = result.error_signal.size() / 2;
      const double fs_hz = cfg.noise.sample_rate;
      auto pe = analysis::welch_psd(std::span(result.error_signal).subspan(half), fs_hz, kPsdSegment);
      if (!disturbance) {
        disturbance = analysis::welch_psd(std::span(result.disturbance_signal).subspan(half), fs_hz,
                                          kPsdSegment);
      }
      const auto m = band_metrics(pe, *disturbance);
      entry["spectrum"] = {{"window", "second half of the run"},
                           {"in_band_attenuation_db", m.in_band_db},
                           {"low_band_excess_db", m.low_band_db},
                           {"high_band_excess_db", m.high_band_db},
                           {"worst_out_of_band_bin_excess_db", m.worst_out_of_band_bin_db}};
      spectra.emplace_back(alg, std::move(pe));
    }
    comparison["algorithms"][label] = entry;
  }

  if (disturbance && !spectra.empty()) {
    std::string csv = "frequency_hz";
    for (const auto& [alg, _] : spectra) csv += "," + std::string(controllers::to_string(alg)) + "_db";
    csv += ",disturbance_db\n";
    for (std::size_t k = 0; k < disturbance->frequencies.size(); ++k) {
      csv += harness::format_real(disturbance->frequencies[k]);
      for (const auto& [_, p] : spectra) csv += "," + harness::format_real(analysis::to_db(p.density[k]));
      csv += "," + harness::format_real(analysis::to_db(disturbance->density[k])) + "\n";
    }
    const fs::path psd_path = output_dir / (scenario.name + ".psd.csv");
    harness::write_text(psd_path, csv);
    report.files.push_back(psd_path);
    comparison["psd_file"] = psd_path.filename().string();
  }

  const fs::path cmp = output_dir / (scenario.name + ".comparison.json");
  harness::write_text(cmp, comparison.dump(2) + "\n");
  report.files.push_back(cmp);
  report.comparison = std::move(comparison);
  return report;
}

json analyze_scenario(const harness::ScenarioConfig& scenario) {
  scenario.validate();
  const std::size_t n = std::max(kAnalysisSamples, 10 * scenario.filter_length);
  const auto base = acoustics::generate(scenario.noise, n);

  struct Environment {
    std::size_t start;
    acoustics::FirPath primary;
    double gain;
  };
  std::vector<Environment> envs{{0, scenario.primary_path, scenario.noise_gain}};
  for (const auto& c : scenario.path_changes) {
    envs.push_back({c.sample_index, c.primary_path, c.noise_gain.value_or(envs.back().gain)});
  }

  const auto& alg = scenario.algorithm;
  json out{{"scenario", harness::to_json(scenario)},
           {"analysis_samples", n},
           {"secondary_power_gain", scenario.secondary_model.power_gain()}};
  json environments = json::array();
  bool unstable = false;
  for (const auto& env : envs) {
    std::vector<double> x(base);
    for (double& v : x) v *= env.gain;
    const auto d = acoustics::convolve(env.primary, x);
    json e{{"start_sample", env.start}, {"noise_gain", env.gain}};
    if (env.gain == 0.0) {
      e["note"] = "silent reference; no statistics";
      environments.push_back(e);
      continue;
    }
    const auto model =
        analysis::build_correlation_model(x, d, scenario.secondary_model, scenario.filter_length);
    double mean = 0.0, var = 0.0;
    for (double v : d) mean += v;
    mean /= static_cast<double>(d.size());
    for (double v : d) var += (v - mean) * (v - mean);
    var /= static_cast<double>(d.size());
    e["disturbance_power"] = var;

    const double vs_cfg = alg.varsigma.value;
    const auto rep = analysis::stability_bounds(model, alg.kappa, vs_cfg, alg.mu1_initial);
    unstable = unstable || !rep.stable();
    e["lambda_max"] = rep.lambda_max;
    e["lambda_min"] = rep.lambda_min;
    e["mu1_bound"] = rep.mu1_bound;
    e["varsigma_mu1_bound"] = rep.mu2_bound;
    e["mu1_initial"] = alg.mu1_initial;
    e["mu1_within_bound"] = rep.mu1_within_bound;
    e["varsigma_mu1"] = vs_cfg * alg.mu1_initial;
    e["varsigma_mu1_within_bound"] = rep.varsigma_mu1_within_bound;
    if (rep.lambda_min > 0.0 && alg.mu1_initial > 0.0 && alg.kappa > -0.5) {
      e["time_constant_slowest"] = analysis::time_constant(alg.mu1_initial, alg.kappa, rep.lambda_min);
      e["time_constant_fastest"] = analysis::time_constant(alg.mu1_initial, alg.kappa, rep.lambda_max);
      if (alg.mu_min > 0.0) {
        e["time_constant_slowest_at_mu_min"] = analysis::time_constant(alg.mu_min, alg.kappa, rep.lambda_min);
      }
    }

    const double derived = var > 0.0 ? controllers::lagrangian_factor(
                                           scenario.secondary_model.power_gain(), var, alg.rho_sq)
                                     : 0.0;
    e["varsigma_configured"] = vs_cfg;
    e["varsigma_derived"] = derived;
    try {
      const auto wo = analysis::wiener_optimal(model);
      e["w_o"] = reals(wo);
      e["w_o_output_power"] = analysis::quadratic_form(model.R_x, wo);
      e["w_sub_configured_varsigma"] = reals(analysis::wiener_suboptimal(model, vs_cfg));
      const auto ws = analysis::wiener_suboptimal(model, derived);
      e["w_sub_derived_varsigma"] = reals(ws);
      e["w_sub_derived_output_power"] = analysis::quadratic_form(model.R_x, ws);
      e["w_sub_filtered_variant"] =
          reals(analysis::wiener_suboptimal(model, derived, analysis::SuboptimalVariant::filtered));
    } catch (const SingularMatrixError& err) {
      e["w_o"] = nullptr;
      e["singular"] = {{"message", err.what()}, {"condition_estimate", err.condition_estimate()}};
    }
    environments.push_back(e);
  }
  out["environments"] = environments;
  out["verdict"] = unstable ? "unstable-configuration" : "stable-configuration";
  return out;
}

void print_analysis(const json& report, std::ostream& out) {
  out << "scenario: " << report["scenario"]["name"].get<std::string>() << "\n";
  out << "verdict: " << report["verdict"].get<std::string>() << "\n";
  for (const auto& e : report["environments"]) {
    out << "environment from sample " << e["start_sample"] << " (noise gain " << e["noise_gain"] << ")\n";
    for (const char* key : {"lambda_max", "lambda_min", "mu1_bound", "mu1_initial", "mu1_within_bound",
                            "varsigma_mu1_bound", "varsigma_mu1", "varsigma_mu1_within_bound",
                            "time_constant_slowest", "time_constant_fastest", "varsigma_configured",
                            "varsigma_derived", "w_o", "w_sub_configured_varsigma",
                            "w_sub_derived_varsigma", "singular"}) {
      if (!e.contains(key)) continue;
      const auto& v = e[key];
      std::string text;
      if (v.is_array() && v.size() > 8) {
        text = "[" + std::to_string(v.size()) + " values]";
      } else {
        text = v.dump();
      }
      out << "  " << key << ": " << text << "\n";
    }
  }
}

std::vector<SweepRow> sweep(const harness::ScenarioConfig& scenario, const std::string& parameter,
                            const std::vector<double>& values,
                            const std::vector<Algorithm>& algorithms) {
  if (std::find(kSweepParameters.begin(), kSweepParameters.end(), parameter) ==
      kSweepParameters.end()) {
    throw ConfigError("unknown sweep parameter '" + parameter +
                      "' (expected mu1_initial, kappa, gamma, varsigma or rho_sq)");
  }
  if (values.empty()) throw ConfigError("sweep needs at least one value");
  std::vector<harness::ScenarioConfig> configs;
  for (double v : values) {
    harness::ScenarioConfig c = scenario;
    auto& a = c.algorithm;
    if (parameter == "mu1_initial") a.mu1_initial = v;
    if (parameter == "kappa") a.kappa = v;
    if (parameter == "gamma") a.gamma = v;
    if (parameter == "varsigma") a.varsigma = {controllers::VarsigmaMode::fixed, v};
    if (parameter == "rho_sq") a.rho_sq = v;
    c.capture_signals = false;
    c.validate();
    configs.push_back(std::move(c));
  }
  auto run_value = [&algorithms](harness::ScenarioConfig c, double value) {
    std::vector<SweepRow> rows;
    for (Algorithm alg : algorithms) {
      c.algorithm.algorithm = alg;
      const auto r = harness::run_scenario(c);
      SweepRow row;
      row.value = value;
      row.algorithm = alg;
      row.status = std::string(harness::to_string(r.summary.status));
      const auto& last = r.summary.last_phase();
      row.steady_state_error_power = last.steady_state_error_power;
      row.steady_state_output_power = last.steady_state_output_power;
      row.convergence_samples = last.convergence_samples;
      for (const auto& p : r.summary.phases) row.constraint_violations += p.exceeded_count;
      rows.push_back(row);
    }
    return rows;
  };
  std::vector<std::future<std::vector<SweepRow>>> jobs;
  for (std::size_t k = 0; k < configs.size(); ++k) {
    jobs.push_back(std::async(std::launch::async, run_value, configs[k], values[k]));
  }
  std::vector<SweepRow> rows;
  for (auto& j : jobs) {
    auto part = j.get();
    rows.insert(rows.end(), part.begin(), part.end());
  }
  return rows;
}

std::string sweep_csv(const std::string& parameter, const std::vector<SweepRow>& rows) {
  std::string csv = parameter +
                    ",algorithm,status,steady_state_error_power,steady_state_output_power,"
                    "convergence_samples,constraint_violations\n";
  for (const auto& r : rows) {
    csv += harness::format_real(r.value) + "," + std::string(controllers::to_string(r.algorithm)) +
           "," + r.status + "," + harness::format_real(r.steady_state_error_power) + "," +
           harness::format_real(r.steady_state_output_power) + "," +
           std::to_string(r.convergence_samples) + "," + std::to_string(r.constraint_violations) +
           "\n";
  }
  return csv;
}

}  // namespace ancsim::cli
