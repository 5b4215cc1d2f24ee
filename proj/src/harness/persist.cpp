#include "ancsim/harness/persist.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>

#include "ancsim/acoustics/noise.hpp"
#include "ancsim/analysis/geometry.hpp"
#include "ancsim/errors.hpp"
#include "ancsim/harness/config_json.hpp"

namespace ancsim::harness {

namespace fs = std::filesystem;
using nlohmann::json;

std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string trajectory_csv(const std::vector<TrajectoryRecord>& trajectory,
                           std::size_t weight_count, std::size_t weight_cap) {
  const std::size_t k = std::min(weight_count, weight_cap);
  std::string out = "sample_index";
  for (std::size_t i = 0; i < k; ++i) out += ",w_" + std::to_string(i);
  out += ",e,y,power_estimate,mu1,branch\n";
  for (const auto& r : trajectory) {
    out += std::to_string(r.sample_index);
    for (std::size_t i = 0; i < k; ++i) {
      out += ',';
      out += format_real(r.weights[i]);
    }
    for (double v : {r.error, r.output, r.power_estimate, r.step_size}) {
      out += ',';
      out += format_real(v);
    }
    out += ',';
    out += controllers::to_string(r.branch);
    out += '\n';
  }
  return out;
}

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

json real_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json reals(const std::vector<double>& v) {
  json a = json::array();
  for (double x : v) a.push_back(real_or_null(x));
  return a;
}

json phase_json(const PhaseSummary& p) {
  return json{{"start", p.start},
              {"end", p.end},
              {"final_weights", reals(p.final_weights)},
              {"steady_state_error_power", real_or_null(p.steady_state_error_power)},
              {"steady_state_output_power", real_or_null(p.steady_state_output_power)},
              {"steady_state_power_estimate", real_or_null(p.steady_state_power_estimate)},
              {"weight_mean", reals(p.weight_mean)},
              {"weight_std", reals(p.weight_std)},
              {"convergence_samples", p.convergence_samples},
              {"exceeded_count", p.exceeded_count}};
}

}  // namespace

json summary_json(const RunResult& result, const std::string& trajectory_hash) {
  const auto& s = result.summary;
  json j{{"scenario", to_json(result.config)},
         {"status", to_string(s.status)},
         {"message", s.message},
         {"samples_run", s.samples_run},
         {"records", result.trajectory.size()},
         {"final_weights", reals(s.final_weights)},
         {"final_step_size", real_or_null(s.final_step_size)},
         {"varsigma", s.varsigma},
         {"sigma_d_sq", s.sigma_d_sq ? json(*s.sigma_d_sq) : json(nullptr)},
         {"trajectory_hash", trajectory_hash}};
  json phases = json::array();
  for (const auto& p : s.phases) phases.push_back(phase_json(p));
  j["phases"] = phases;
  if (!s.phases.empty()) {
    const auto& last = s.last_phase();
    j["steady_state_error_power"] = real_or_null(last.steady_state_error_power);
    j["steady_state_output_power"] = real_or_null(last.steady_state_output_power);
    j["convergence_samples"] = last.convergence_samples;
    j["weight_std"] = reals(last.weight_std);
  }
  return j;
}

void write_text(const fs::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing: " + std::strerror(errno));
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.close();
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

namespace {

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw IoError("cannot create output directory '" + dir.string() + "': " + ec.message());
  }
}

std::string boundary_csv(const std::vector<std::array<double, 2>>& points) {
  std::string out = "w_0,w_1\n";
  for (const auto& p : points) out += format_real(p[0]) + "," + format_real(p[1]) + "\n";
  return out;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = line.find(sep, start);
    out.push_back(line.substr(start, pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

double parse_real(const std::string& s, const fs::path& path) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0') throw DataError("'" + path.string() + "': bad number '" + s + "'");
  return v;
}

}  // namespace

WrittenFiles persist(const RunResult& result, const fs::path& dir, const std::string& stem) {
  ensure_dir(dir);
  WrittenFiles files;
  files.trajectory = dir / (stem + ".trajectory.csv");
  files.summary = dir / (stem + ".summary.json");
  const std::string csv =
      trajectory_csv(result.trajectory, result.config.filter_length, result.config.weight_cap);
  write_text(files.trajectory, csv);
  write_text(files.summary, summary_json(result, fnv1a_hex(csv)).dump(2) + "\n");
  return files;
}

std::vector<fs::path> write_boundaries(const ScenarioConfig& config, const fs::path& dir,
                                       const std::string& stem) {
  std::vector<fs::path> out;
  if (config.filter_length != 2) return out;
  ensure_dir(dir);
  const auto r = acoustics::theoretical_autocorrelation(config.noise, 2);
  auto emit = [&](double gain, const fs::path& path) {
    const double g2 = gain * gain;
    const std::vector<double> lags = {r[0] * g2, r[1] * g2};
    write_text(path, boundary_csv(analysis::constraint_ellipse(analysis::Matrix::toeplitz(lags),
                                                               config.algorithm.rho_sq)));
    out.push_back(path);
  };
  if (config.noise_gain > 0.0) emit(config.noise_gain, dir / (stem + ".boundary.csv"));
  double gain = config.noise_gain;
  for (std::size_t k = 0; k < config.path_changes.size(); ++k) {
    const auto& c = config.path_changes[k];
    if (c.noise_gain && *c.noise_gain != gain && *c.noise_gain > 0.0) {
      gain = *c.noise_gain;
      emit(gain, dir / (stem + ".phase" + std::to_string(k + 2) + ".boundary.csv"));
    }
  }
  return out;
}

std::vector<TrajectoryRecord> read_trajectory_csv(const fs::path& path) {
  std::istringstream in(read_text(path));
  std::string line;
  if (!std::getline(in, line)) throw DataError("'" + path.string() + "': missing header");
  const auto header = split(line, ',');
  if (header.size() < 6 || header.front() != "sample_index" || header.back() != "branch") {
    throw DataError("'" + path.string() + "': unexpected trajectory header");
  }
  const std::size_t weights = header.size() - 6;
  std::vector<TrajectoryRecord> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != header.size()) throw DataError("'" + path.string() + "': ragged row");
    TrajectoryRecord r;
    r.sample_index = static_cast<std::size_t>(std::stoull(f[0]));
    for (std::size_t k = 0; k < weights; ++k) r.weights.push_back(parse_real(f[1 + k], path));
    r.error = parse_real(f[1 + weights], path);
    r.output = parse_real(f[2 + weights], path);
    r.power_estimate = parse_real(f[3 + weights], path);
    r.step_size = parse_real(f[4 + weights], path);
    r.branch = controllers::branch_from_string(f[5 + weights]);
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<std::array<double, 2>> read_boundary_csv(const fs::path& path) {
  std::istringstream in(read_text(path));
  std::string line;
  std::getline(in, line);
  if (line != "w_0,w_1") throw DataError("'" + path.string() + "': unexpected boundary header");
  std::vector<std::array<double, 2>> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != 2) throw DataError("'" + path.string() + "': ragged row");
    out.push_back({parse_real(f[0], path), parse_real(f[1], path)});
  }
  return out;
}

}  // namespace ancsim::harness
