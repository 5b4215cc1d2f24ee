#include "ancsim/harness/config_json.hpp"

#include <set>
#include <string>

#include "ancsim/errors.hpp"

namespace ancsim::harness {

using nlohmann::json;
namespace ac = ancsim::acoustics;
namespace ct = ancsim::controllers;

namespace {

json path_json(const ac::FirPath& p) {
  return json(std::vector<double>(p.coefficients().begin(), p.coefficients().end()));
}

void check_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) throw ConfigError(where + " must be a JSON object");
  for (const auto& [key, _] : obj.items()) {
    if (!allowed.count(key)) {
      throw ConfigError("unknown key '" + (where.empty() ? key : where + "." + key) + "'");
    }
  }
}

template <typename T>
void read(const json& obj, const char* key, T& out, const std::string& where) {
  if (!obj.contains(key)) return;
  try {
    out = obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError("key '" + where + key + "' has the wrong type");
  }
}

ac::FirPath read_path(const json& v, const std::string& key) {
  try {
    return ac::FirPath(v.get<std::vector<double>>());
  } catch (const json::exception&) {
    throw ConfigError("key '" + key + "' must be an array of numbers");
  }
}

std::string read_string(const json& v, const std::string& key) {
  if (!v.is_string()) throw ConfigError("key '" + key + "' must be a string");
  return v.get<std::string>();
}

ct::AlgorithmConfig algorithm_from_json(const json& a, ct::AlgorithmConfig c) {
  check_keys(a,
             {"algorithm", "mu1_initial", "mu_min", "gamma", "kappa", "rho_sq", "varsigma",
              "power_smoothing", "power_estimator", "correlation_smoothing", "projection_interval",
              "momentum_on_switch", "step_floor_rule"},
             "algorithm");
  const std::string w = "algorithm.";
  if (a.contains("algorithm")) c.algorithm = ct::algorithm_from_string(read_string(a["algorithm"], w + "algorithm"));
  read(a, "mu1_initial", c.mu1_initial, w);
  read(a, "mu_min", c.mu_min, w);
  read(a, "gamma", c.gamma, w);
  read(a, "kappa", c.kappa, w);
  read(a, "rho_sq", c.rho_sq, w);
  if (a.contains("varsigma")) {
    const auto& v = a["varsigma"];
    if (v.is_number()) {
      c.varsigma = {ct::VarsigmaMode::fixed, v.get<double>()};
    } else if (v.is_string()) {
      c.varsigma.mode = ct::varsigma_mode_from_string(v.get<std::string>());
    } else {
      check_keys(v, {"mode", "value"}, "algorithm.varsigma");
      if (v.contains("mode")) c.varsigma.mode = ct::varsigma_mode_from_string(read_string(v["mode"], "algorithm.varsigma.mode"));
      read(v, "value", c.varsigma.value, "algorithm.varsigma.");
    }
  }
  read(a, "power_smoothing", c.power_smoothing, w);
  if (a.contains("power_estimator")) c.power_estimator = ct::power_estimator_from_string(read_string(a["power_estimator"], w + "power_estimator"));
  read(a, "correlation_smoothing", c.correlation_smoothing, w);
  read(a, "projection_interval", c.projection_interval, w);
  if (a.contains("momentum_on_switch")) c.momentum_on_switch = ct::momentum_on_switch_from_string(read_string(a["momentum_on_switch"], w + "momentum_on_switch"));
  if (a.contains("step_floor_rule")) c.step_floor_rule = ct::step_floor_rule_from_string(read_string(a["step_floor_rule"], w + "step_floor_rule"));
  return c;
}

ac::NoiseSource noise_from_json(const json& j, ac::NoiseSource n) {
  check_keys(j, {"kind", "variance", "band", "sample_rate", "seed"}, "noise");
  if (j.contains("kind")) n.kind = ac::noise_kind_from_string(read_string(j["kind"], "noise.kind"));
  read(j, "variance", n.variance, "noise.");
  read(j, "sample_rate", n.sample_rate, "noise.");
  read(j, "seed", n.seed, "noise.");
  if (j.contains("band")) {
    const auto& b = j["band"];
    if (b.is_null()) {
      n.band.reset();
    } else if (b.is_array() && b.size() == 2 && b[0].is_number() && b[1].is_number()) {
      n.band = ac::FrequencyBand{b[0].get<double>(), b[1].get<double>()};
    } else {
      throw ConfigError("key 'noise.band' must be null or [low_hz, high_hz]");
    }
  }
  return n;
}

}  // namespace

json to_json(const ct::AlgorithmConfig& c) {
  return json{{"algorithm", ct::to_string(c.algorithm)},
              {"mu1_initial", c.mu1_initial},
              {"mu_min", c.mu_min},
              {"gamma", c.gamma},
              {"kappa", c.kappa},
              {"rho_sq", c.rho_sq},
              {"varsigma", {{"mode", ct::to_string(c.varsigma.mode)}, {"value", c.varsigma.value}}},
              {"power_smoothing", c.power_smoothing},
              {"power_estimator", ct::to_string(c.power_estimator)},
              {"correlation_smoothing", c.correlation_smoothing},
              {"projection_interval", c.projection_interval},
              {"momentum_on_switch", ct::to_string(c.momentum_on_switch)},
              {"step_floor_rule", ct::to_string(c.step_floor_rule)}};
}

json to_json(const ScenarioConfig& c) {
  json noise{{"kind", ac::to_string(c.noise.kind)},
             {"variance", c.noise.variance},
             {"band", c.noise.band ? json::array({c.noise.band->low_hz, c.noise.band->high_hz}) : json(nullptr)},
             {"sample_rate", c.noise.sample_rate},
             {"seed", c.noise.seed}};
  json changes = json::array();
  for (const auto& pc : c.path_changes) {
    changes.push_back({{"sample_index", pc.sample_index},
                       {"primary_path", path_json(pc.primary_path)},
                       {"secondary_path", path_json(pc.secondary_path)},
                       {"noise_gain", pc.noise_gain ? json(*pc.noise_gain) : json(nullptr)}});
  }
  json sat = nullptr;
  if (c.saturation) {
    sat = {{"clip_threshold", c.saturation->clip_threshold},
           {"mode", ac::to_string(c.saturation->mode)}};
  }
  return json{{"name", c.name},
              {"noise", noise},
              {"noise_gain", c.noise_gain},
              {"primary_path", path_json(c.primary_path)},
              {"secondary_path", path_json(c.secondary_path)},
              {"secondary_model", path_json(c.secondary_model)},
              {"algorithm", to_json(c.algorithm)},
              {"saturation", sat},
              {"n_samples", c.n_samples},
              {"filter_length", c.filter_length},
              {"path_changes", changes},
              {"record_stride", c.record_stride},
              {"weight_cap", c.weight_cap},
              {"sigma_d_sq", c.sigma_d_sq ? json(*c.sigma_d_sq) : json(nullptr)},
              {"preamble_samples", c.preamble_samples},
              {"capture_signals", c.capture_signals},
              {"notes", c.notes}};
}

ScenarioConfig scenario_from_json(const json& doc, const ScenarioConfig& base) {
  check_keys(doc,
             {"name", "noise", "noise_gain", "primary_path", "secondary_path", "secondary_model",
              "algorithm", "saturation", "n_samples", "filter_length", "path_changes",
              "record_stride", "weight_cap", "sigma_d_sq", "preamble_samples", "capture_signals",
              "notes"},
             "");
  ScenarioConfig c = base;
  read(doc, "name", c.name, "");
  if (doc.contains("noise")) c.noise = noise_from_json(doc["noise"], c.noise);
  read(doc, "noise_gain", c.noise_gain, "");
  if (doc.contains("primary_path")) c.primary_path = read_path(doc["primary_path"], "primary_path");
  if (doc.contains("secondary_path")) c.secondary_path = read_path(doc["secondary_path"], "secondary_path");
  if (doc.contains("secondary_model")) c.secondary_model = read_path(doc["secondary_model"], "secondary_model");
  if (doc.contains("algorithm")) c.algorithm = algorithm_from_json(doc["algorithm"], c.algorithm);
  if (doc.contains("saturation")) {
    const auto& s = doc["saturation"];
    if (s.is_null()) {
      c.saturation.reset();
    } else {
      check_keys(s, {"clip_threshold", "mode"}, "saturation");
      ac::SaturationModel m = c.saturation.value_or(ac::SaturationModel{});
      read(s, "clip_threshold", m.clip_threshold, "saturation.");
      if (s.contains("mode")) m.mode = ac::saturation_mode_from_string(read_string(s["mode"], "saturation.mode"));
      c.saturation = m;
    }
  }
  read(doc, "n_samples", c.n_samples, "");
  read(doc, "filter_length", c.filter_length, "");
  if (doc.contains("path_changes")) {
    const auto& arr = doc["path_changes"];
    if (!arr.is_array()) throw ConfigError("key 'path_changes' must be an array");
    c.path_changes.clear();
    for (std::size_t k = 0; k < arr.size(); ++k) {
      const std::string where = "path_changes[" + std::to_string(k) + "]";
      check_keys(arr[k], {"sample_index", "primary_path", "secondary_path", "noise_gain"}, where);
      PathChange pc;
      pc.primary_path = c.primary_path;
      pc.secondary_path = c.secondary_path;
      read(arr[k], "sample_index", pc.sample_index, where + ".");
      if (arr[k].contains("primary_path")) pc.primary_path = read_path(arr[k]["primary_path"], where + ".primary_path");
      if (arr[k].contains("secondary_path")) pc.secondary_path = read_path(arr[k]["secondary_path"], where + ".secondary_path");
      if (arr[k].contains("noise_gain") && !arr[k]["noise_gain"].is_null()) {
        double g = 0.0;
        read(arr[k], "noise_gain", g, where + ".");
        pc.noise_gain = g;
      }
      c.path_changes.push_back(pc);
    }
  }
  read(doc, "record_stride", c.record_stride, "");
  read(doc, "weight_cap", c.weight_cap, "");
  if (doc.contains("sigma_d_sq")) {
    if (doc["sigma_d_sq"].is_null()) {
      c.sigma_d_sq.reset();
    } else {
      double v = 0.0;
      read(doc, "sigma_d_sq", v, "");
      c.sigma_d_sq = v;
    }
  }
  read(doc, "preamble_samples", c.preamble_samples, "");
  read(doc, "capture_signals", c.capture_signals, "");
  read(doc, "notes", c.notes, "");
  return c;
}

void apply_override(json& doc, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos || eq == 0) {
    throw ConfigError("override '" + std::string(assignment) + "' is not of the form key=value");
  }
  const std::string key(assignment.substr(0, eq));
  const std::string text(assignment.substr(eq + 1));
  json value = json::parse(text, nullptr, false);
  if (value.is_discarded()) value = text;

  std::vector<std::string> parts;
  for (std::size_t start = 0;;) {
    const auto dot = key.find('.', start);
    parts.push_back(key.substr(start, dot - start));
    if (dot == std::string::npos) break;
    start = dot + 1;
  }
  if (parts.size() == 1 && doc.contains(parts[0]) && doc[parts[0]].is_object() &&
      !value.is_object() && doc[parts[0]].contains(parts[0])) {
    parts.push_back(parts[0]);
  } else if (parts.size() == 1 && !doc.contains(parts[0])) {
    for (const char* section : {"algorithm", "noise", "saturation"}) {
      if (doc.contains(section) && doc[section].is_object() && doc[section].contains(parts[0])) {
        parts.insert(parts.begin(), section);
        break;
      }
    }
  }
  json* node = &doc;
  for (std::size_t k = 0; k + 1 < parts.size(); ++k) {
    if (!node->is_object() || !node->contains(parts[k]) || !(*node)[parts[k]].is_object()) {
      throw ConfigError("unknown override key '" + key + "'");
    }
    node = &(*node)[parts[k]];
  }
  if (!node->is_object() || !node->contains(parts.back())) {
    throw ConfigError("unknown override key '" + key + "'");
  }
  (*node)[parts.back()] = value;
}

}  // namespace ancsim::harness
