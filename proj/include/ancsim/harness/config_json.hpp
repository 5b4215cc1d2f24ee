#pragma once

#include <string_view>

#include "ancsim/harness/scenario.hpp"
#include "json.hpp"

namespace ancsim::harness {

nlohmann::json to_json(const ScenarioConfig& config);
nlohmann::json to_json(const controllers::AlgorithmConfig& config);

/// Reads a config, starting from `base` for keys the document leaves out.
/// Unknown keys and type mismatches raise ConfigError naming the key.
ScenarioConfig scenario_from_json(const nlohmann::json& doc, const ScenarioConfig& base = {});

/// Applies "key=value" to a config document. Dotted keys address nested
/// fields ("algorithm.kappa"); a bare key is looked up at the top level, then
/// in algorithm, noise and saturation; "algorithm=2gd" sets algorithm.algorithm.
/// The value is parsed as JSON when
/// possible and kept as a string otherwise.
void apply_override(nlohmann::json& doc, std::string_view assignment);

}  // namespace ancsim::harness
