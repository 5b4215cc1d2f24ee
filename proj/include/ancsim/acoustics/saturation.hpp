#pragma once

#include <string_view>

namespace ancsim::acoustics {

enum class SaturationMode { symmetric, upper_only };

/// Loudspeaker amplitude clipping at ±y_T (symmetric) or +y_T only.
struct SaturationModel {
  double clip_threshold = 1.0;
  SaturationMode mode = SaturationMode::symmetric;

  void validate() const;
};

double saturate(double y, const SaturationModel& model) noexcept;

std::string_view to_string(SaturationMode mode) noexcept;
SaturationMode saturation_mode_from_string(std::string_view name);

}  // namespace ancsim::acoustics
