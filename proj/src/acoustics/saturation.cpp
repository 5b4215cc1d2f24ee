#include "ancsim/acoustics/saturation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ancsim/errors.hpp"

namespace ancsim::acoustics {

void SaturationModel::validate() const {
  if (!(clip_threshold > 0.0) || !std::isfinite(clip_threshold)) {
    throw ConfigError("saturation.clip_threshold must be finite and > 0");
  }
}

double saturate(double y, const SaturationModel& model) noexcept {
  if (model.mode == SaturationMode::upper_only) return std::min(y, model.clip_threshold);
  return std::clamp(y, -model.clip_threshold, model.clip_threshold);
}

std::string_view to_string(SaturationMode mode) noexcept {
  return mode == SaturationMode::symmetric ? "symmetric" : "upper-only";
}

SaturationMode saturation_mode_from_string(std::string_view name) {
  if (name == "symmetric") return SaturationMode::symmetric;
  if (name == "upper-only") return SaturationMode::upper_only;
  throw ConfigError("unknown saturation mode '" + std::string(name) + "'");
}

}  // namespace ancsim::acoustics
