#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ancsim/harness/scenario.hpp"

namespace ancsim::cli {

/// fig2-saturation, fig3-static, fig5-varying, custom.
const std::vector<std::string>& preset_names();

/// Complete scenario for a preset name; throws ConfigError for unknown names.
/// "custom" is the library default scenario (two taps, white noise).
harness::ScenarioConfig preset(std::string_view name);

/// The four algorithms in comparison order.
const std::vector<controllers::Algorithm>& all_algorithms();

}  // namespace ancsim::cli
