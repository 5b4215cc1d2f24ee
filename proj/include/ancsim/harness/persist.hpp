#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "ancsim/harness/runner.hpp"
#include "json.hpp"

namespace ancsim::harness {

/// Trajectory CSV text: sample_index, w_0..w_{k−1}, e, y, power_estimate, mu1,
/// branch, where k = min(weight count, weight_cap). Reals use 17 significant
/// digits.
std::string trajectory_csv(const std::vector<TrajectoryRecord>& trajectory,
                           std::size_t weight_count, std::size_t weight_cap);

/// 64-bit FNV-1a of `bytes`, as 16 lowercase hex digits.
std::string fnv1a_hex(std::string_view bytes);

nlohmann::json summary_json(const RunResult& result, const std::string& trajectory_hash);

struct WrittenFiles {
  std::filesystem::path trajectory;
  std::filesystem::path summary;
  std::vector<std::filesystem::path> boundaries;
};

/// Writes <stem>.trajectory.csv and <stem>.summary.json into `dir` (created if
/// missing). Throws IoError with the offending path.
WrittenFiles persist(const RunResult& result, const std::filesystem::path& dir,
                     const std::string& stem);

/// Constraint ellipses for two-weight scenarios: <stem>.boundary.csv for the
/// initial environment and <stem>.phase<k>.boundary.csv for each later phase
/// whose reference power differs. Empty when filter_length ≠ 2.
std::vector<std::filesystem::path> write_boundaries(const ScenarioConfig& config,
                                                    const std::filesystem::path& dir,
                                                    const std::string& stem);

void write_text(const std::filesystem::path& path, std::string_view text);
std::string read_text(const std::filesystem::path& path);

std::vector<TrajectoryRecord> read_trajectory_csv(const std::filesystem::path& path);
std::vector<std::array<double, 2>> read_boundary_csv(const std::filesystem::path& path);

/// "%.17g" formatting.
std::string format_real(double v);

}  // namespace ancsim::harness
