import math

import numpy as np
import pytest

import ancsim


def test_presets_listed():
    assert set(ancsim.preset_names()) >= {"fig3-static", "fig5-varying", "fig2-saturation", "custom"}


def test_preset_overrides():
    s = ancsim.preset("fig3-static", kappa=0.5, n_samples=1000)
    assert s["algorithm"]["kappa"] == 0.5
    assert s["n_samples"] == 1000


def test_run_small_scenario_is_deterministic():
    s = ancsim.preset("fig3-static", n_samples=20000, algorithm="fxlms")
    a = ancsim.run(s)
    b = ancsim.run(s)
    assert a["trajectory_csv"] == b["trajectory_csv"]
    assert a["summary"]["status"] == "completed"
    assert a["summary"]["samples_run"] == 20000
    assert a["trajectory_csv"].startswith("sample_index,w_0,w_1,e,y,power_estimate,mu1,branch")


def test_static_preset_reaches_constrained_optimum():
    out = ancsim.run(ancsim.preset("fig3-static"))
    w = out["summary"]["final_weights"]
    assert abs(w[0] - 0.89) <= 0.05
    assert abs(w[1] - 0.66) <= 0.05


def test_varying_preset_reports_two_phases():
    out = ancsim.run(ancsim.preset("fig5-varying", algorithm="2gd-momentum-vss"))
    assert len(out["summary"]["phases"]) == 2


def test_captured_signals_are_arrays():
    s = ancsim.preset("custom", n_samples=5000, capture_signals=True, mu1_initial=0.0, mu_min=0.0)
    out = ancsim.run(s)
    assert isinstance(out["error_signal"], np.ndarray)
    np.testing.assert_array_equal(out["error_signal"], out["disturbance_signal"])


def test_config_errors_are_value_errors():
    s = ancsim.preset("custom")
    s["algorithm"]["rho_sq"] = -1.0
    with pytest.raises(ancsim.ConfigError, match="rho_sq"):
        ancsim.run(s)
    with pytest.raises(ValueError):
        ancsim.preset("missing")


def test_singular_correlation():
    x = np.zeros(1000)
    with pytest.raises(ancsim.SingularMatrixError):
        ancsim.wiener_optimal(x, x, [1.0], 2)
    assert issubclass(ancsim.SingularMatrixError, ancsim.DataError)


def test_analysis_helpers():
    rng = np.random.default_rng(3)
    x = rng.standard_normal(50000)
    d = np.convolve(x, [0.7, -0.2])[: x.size]
    w = ancsim.wiener_optimal(x, d, [1.0], 2)
    assert w == pytest.approx([0.7, -0.2], abs=0.01)
    assert ancsim.lagrangian_factor(1.0, 4.0, 1.0) == pytest.approx(1.0)
    assert ancsim.time_constant(2.5e-3, 0.0, 1.0) == pytest.approx(200.0)
    f, p = ancsim.welch_psd(rng.standard_normal(65536), 16000.0)
    assert f[0] == 0.0 and f[-1] == 8000.0
    assert p.sum() * (f[1] - f[0]) == pytest.approx(1.0, rel=0.05)


def test_analyze_and_cli(tmp_path):
    report = ancsim.analyze(ancsim.preset("fig3-static"))
    assert report["verdict"] == "stable-configuration"
    assert math.isclose(report["environments"][0]["w_o"][0], 1.76, rel_tol=0.01)
    code, out, err = ancsim.main(["run", "custom", "--set", "n_samples=2000", "--output-dir", str(tmp_path)])
    assert code == 0, err
    assert (tmp_path / "custom.comparison.json").exists()
    assert ancsim.main(["run", "nope"])[0] == 2
