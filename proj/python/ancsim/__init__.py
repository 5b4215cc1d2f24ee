"""Python access to the ancsim simulator core."""

import json

from . import _core
from ._core import (
    ConfigError,
    DataError,
    DivergenceError,
    IoError,
    SingularMatrixError,
    lagrangian_factor,
    preset_names,
    time_constant,
    welch_psd,
    wiener_optimal,
)

__all__ = [
    "ConfigError", "DataError", "DivergenceError", "IoError",
    "SingularMatrixError", "analyze", "lagrangian_factor", "main", "preset",
    "preset_names", "run", "time_constant", "welch_psd", "wiener_optimal",
]


def preset(name, **overrides):
    """Scenario dict for a preset, with optional key=value style overrides."""
    text = _core.preset(name)
    for key, value in overrides.items():
        text = _core.apply_override(text, f"{key}={json.dumps(value)}")
    return json.loads(text)


def run(scenario):
    """Run a scenario dict. Returns summary (dict), trajectory_csv (str) and
    error/disturbance signals (numpy arrays, empty unless captured)."""
    payload = json.dumps(scenario)
    if scenario.get("path_changes"):
        out = _core.run_varying_environment(payload)
    else:
        out = _core.run_scenario(payload)
    out["summary"] = json.loads(out["summary"])
    return out


def analyze(scenario):
    return json.loads(_core.analyze(json.dumps(scenario)))


def main(args):
    return _core.main(list(args))
