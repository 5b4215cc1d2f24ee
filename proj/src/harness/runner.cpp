#include "ancsim/harness/runner.hpp"

#include <algorithm>
#include <cmath>

#include "ancsim/acoustics/delay_line.hpp"
#include "ancsim/controllers/controller.hpp"
#include "ancsim/controllers/filtered_reference.hpp"
#include "ancsim/controllers/steps.hpp"
#include "ancsim/errors.hpp"

namespace ancsim::harness {

using acoustics::FirPath;
using controllers::Branch;

std::string_view to_string(RunStatus s) noexcept {
  return s == RunStatus::completed ? "completed" : "diverged";
}

namespace {

struct PhaseAccumulator {
  std::size_t start = 0;
  std::size_t end = 0;
  std::size_t window_start = 0;
  std::size_t count = 0;
  double error_power = 0.0;
  double output_power = 0.0;
  double power_estimate = 0.0;
  std::vector<double> mean;
  std::vector<double> m2;
  std::size_t exceeded = 0;

  PhaseAccumulator(std::size_t s, std::size_t e, std::size_t taps)
      : start(s), end(e), mean(taps, 0.0), m2(taps, 0.0) {
    window_start = s + static_cast<std::size_t>(std::floor(0.8 * static_cast<double>(e - s)));
  }

  void add(std::size_t n, double e, double y, double p, const std::vector<double>& w) {
    if (n < window_start) return;
    ++count;
    error_power += e * e;
    output_power += y * y;
    power_estimate += p;
    const double inv = 1.0 / static_cast<double>(count);
    for (std::size_t k = 0; k < w.size(); ++k) {
      const double delta = w[k] - mean[k];
      mean[k] += delta * inv;
      m2[k] += delta * (w[k] - mean[k]);
    }
  }

  PhaseSummary finish(const std::vector<double>& final_weights,
                      const std::vector<TrajectoryRecord>& trajectory) const {
    PhaseSummary s;
    s.start = start;
    s.end = end;
    s.final_weights = final_weights;
    s.exceeded_count = exceeded;
    const double c = static_cast<double>(count);
    s.steady_state_error_power = count ? error_power / c : NAN;
    s.steady_state_output_power = count ? output_power / c : NAN;
    s.steady_state_power_estimate = count ? power_estimate / c : NAN;
    s.weight_mean = mean;
    s.weight_std.resize(m2.size());
    for (std::size_t k = 0; k < m2.size(); ++k) s.weight_std[k] = count ? std::sqrt(m2[k] / c) : NAN;

    double norm_final = 0.0;
    for (double v : final_weights) norm_final += v * v;
    const double tol = 0.05 * std::sqrt(norm_final);
    std::size_t converged_at = start;
    for (std::size_t r = 0; r < trajectory.size(); ++r) {
      const auto& rec = trajectory[r];
      if (rec.sample_index < start || rec.sample_index >= end) continue;
      double dist = 0.0;
      for (std::size_t k = 0; k < final_weights.size(); ++k) {
        dist += (rec.weights[k] - final_weights[k]) * (rec.weights[k] - final_weights[k]);
      }
      if (!(std::sqrt(dist) <= tol)) {
        const bool has_next = r + 1 < trajectory.size() && trajectory[r + 1].sample_index < end;
        converged_at = has_next ? trajectory[r + 1].sample_index : end;
      }
    }
    s.convergence_samples = converged_at - start;
    return s;
  }
};

std::vector<std::size_t> phase_bounds(const ScenarioConfig& config) {
  std::vector<std::size_t> b{0};
  for (const auto& c : config.path_changes) {
    if (c.sample_index > 0) b.push_back(c.sample_index);
  }
  b.push_back(config.n_samples);
  b.erase(std::unique(b.begin(), b.end()), b.end());
  return b;
}

double preamble_disturbance_power(const ScenarioConfig& config) {
  const std::size_t n = std::min(config.preamble_samples, config.n_samples);
  acoustics::NoiseGenerator gen(config.noise);
  acoustics::DelayLine ref(config.primary_path.size());
  double sum = 0.0, sumsq = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    ref.push(config.noise_gain * gen.next());
    const double d = acoustics::convolve_stream(config.primary_path, ref.window());
    sum += d;
    sumsq += d * d;
  }
  const double mean = sum / static_cast<double>(n);
  return sumsq / static_cast<double>(n) - mean * mean;
}

}  // namespace

ScenarioConfig resolve(const ScenarioConfig& config, std::optional<double>* sigma_d_sq) {
  config.validate();
  ScenarioConfig out = config;
  if (config.algorithm.varsigma.mode == controllers::VarsigmaMode::derived) {
    const double sd = config.sigma_d_sq ? *config.sigma_d_sq : preamble_disturbance_power(config);
    if (!(sd > 0.0)) {
      throw ConfigError("derived varsigma needs a positive disturbance power (got " +
                        std::to_string(sd) + ")");
    }
    out.algorithm.varsigma.value = controllers::lagrangian_factor(
        config.secondary_model.power_gain(), sd, config.algorithm.rho_sq);
    if (sigma_d_sq) *sigma_d_sq = sd;
  }
  return out;
}

RunResult run_scenario(const ScenarioConfig& input) {
  RunResult result;
  result.config = resolve(input, &result.summary.sigma_d_sq);
  const ScenarioConfig& cfg = result.config;
  const std::size_t taps = cfg.filter_length;

  std::size_t primary_len = cfg.primary_path.size();
  std::size_t secondary_len = cfg.secondary_path.size();
  for (const auto& c : cfg.path_changes) {
    primary_len = std::max(primary_len, c.primary_path.size());
    secondary_len = std::max(secondary_len, c.secondary_path.size());
  }

  controllers::FilteredReference reference(cfg.secondary_model, taps, primary_len);
  acoustics::DelayLine output_history(secondary_len);
  acoustics::NoiseGenerator generator(cfg.noise);
  controllers::Controller controller(cfg.algorithm, taps);

  FirPath primary = cfg.primary_path;
  FirPath secondary = cfg.secondary_path;
  double gain = cfg.noise_gain;

  const auto bounds = phase_bounds(cfg);
  std::vector<PhaseAccumulator> phases;
  for (std::size_t p = 0; p + 1 < bounds.size(); ++p) phases.emplace_back(bounds[p], bounds[p + 1], taps);
  std::vector<std::vector<double>> phase_final(phases.size());
  std::size_t phase = 0;
  std::size_t next_change = 0;

  if (cfg.capture_signals) {
    result.error_signal.reserve(cfg.n_samples);
    result.disturbance_signal.reserve(cfg.n_samples);
  }
  result.trajectory.reserve(cfg.n_samples / cfg.record_stride + 2);
  result.summary.varsigma = cfg.algorithm.varsigma.value;

  auto record = [&](std::size_t n, double e, double y, Branch b) {
    const auto& st = controller.state();
    result.trajectory.push_back(
        {n, st.weights, e, y, st.output_power_estimate, st.step_size, b});
  };

  std::size_t n = 0;
  for (; n < cfg.n_samples; ++n) {
    while (next_change < cfg.path_changes.size() &&
           cfg.path_changes[next_change].sample_index == n) {
      const auto& c = cfg.path_changes[next_change++];
      primary = c.primary_path;
      secondary = c.secondary_path;
      if (c.noise_gain) gain = *c.noise_gain;
    }
    while (phase + 1 < phases.size() && n >= phases[phase].end) ++phase;

    const double x = gain * generator.next();
    reference.push(x);
    const auto ref = reference.reference();
    const double d = acoustics::convolve_stream(primary, ref);
    const double y = controller.output(ref);
    const double y_out = cfg.saturation ? acoustics::saturate(y, *cfg.saturation) : y;
    output_history.push(y_out);
    const double e = d - acoustics::convolve_stream(secondary, output_history.window());
    if (cfg.capture_signals) {
      result.error_signal.push_back(e);
      result.disturbance_signal.push_back(d);
    }

    Branch branch;
    try {
      branch = controller.advance(reference.regressor(), reference.filtered(), e, y);
    } catch (const DivergenceError& err) {
      result.summary.status = RunStatus::diverged;
      result.summary.message = std::string(err.what()) + " at sample " + std::to_string(n);
      record(n, e, y, Branch::within);
      break;
    }

    auto& acc = phases[phase];
    if (branch == Branch::exceeded) ++acc.exceeded;
    acc.add(n, e, y, controller.state().output_power_estimate, controller.state().weights);
    if (n + 1 == acc.end) phase_final[phase] = controller.state().weights;
    if (n % cfg.record_stride == 0 || n + 1 == cfg.n_samples) record(n, e, y, branch);
  }

  auto& summary = result.summary;
  summary.samples_run = summary.status == RunStatus::completed ? cfg.n_samples : n + 1;
  summary.final_weights = controller.state().weights;
  summary.final_step_size = controller.state().step_size;
  for (std::size_t p = 0; p < phases.size(); ++p) {
    if (phase_final[p].empty()) phase_final[p] = controller.state().weights;
    summary.phases.push_back(phases[p].finish(phase_final[p], result.trajectory));
  }
  return result;
}

RunResult run_varying_environment(const ScenarioConfig& config) {
  if (config.path_changes.empty()) {
    throw ConfigError("run_varying_environment: the scenario has no path changes");
  }
  return run_scenario(config);
}

}  // namespace ancsim::harness
