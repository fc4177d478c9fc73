import json
import xml.etree.ElementTree as ET

import numpy as np
import pytest

from ftnpapr.cli import EXIT_BREACH, EXIT_CONFIG, EXIT_OK, main
from ftnpapr.scenario import (
    ConfigError,
    ScenarioConfig,
    load_config,
    reproduce_figure,
    run_scenario,
    verify,
)

MINIMAL_TOML = """
name = "mini"

[frame]
delta = [1.0]
beta = 0.3
T = 0.01
n_symbols = 301
span = 12

[constraint]
kind = "fixed_tx_snr"
P = 1.0

[run]
schemes = ["uniform"]
realizations = 10
master_seed = 77
gamma_points = 100
gap_tolerance = 0.05
output_dir = "PLACEHOLDER"
"""


def write_config(tmp_path, text=MINIMAL_TOML, name="scenario.toml"):
    out_dir = tmp_path / "out"
    path = tmp_path / name
    path.write_text(text.replace("PLACEHOLDER", str(out_dir)))
    return path, out_dir


class TestConfig:
    def test_load_minimal(self, tmp_path):
        path, out_dir = write_config(tmp_path)
        config = load_config(path)
        assert config.name == "mini"
        assert config.deltas == [1.0]
        assert config.realizations == 10
        assert config.output_dir == out_dir

    def test_overrides_win_over_file(self, tmp_path):
        path, _ = write_config(tmp_path)
        config = load_config(path, {"realizations": 3, "master_seed": 5})
        assert config.realizations == 3
        assert config.master_seed == 5

    def test_rejects_unknown_scheme(self):
        with pytest.raises(ConfigError, match="unknown scheme"):
            ScenarioConfig(schemes=["bogus"], n_symbols=301, span=12, deltas=[1.0])

    def test_rejects_regime_mismatch(self):
        # explicit moderate-regime scheme below the boundary is a config error
        with pytest.raises(ConfigError, match="optimal_moderate"):
            ScenarioConfig(
                schemes=["optimal_moderate"], deltas=[0.5], n_symbols=301, span=20
            )

    def test_rejects_bad_delta(self):
        with pytest.raises(ConfigError, match="deltas"):
            ScenarioConfig(deltas=[1.5], n_symbols=301, span=12)

    def test_rejects_frame_without_interior(self):
        with pytest.raises(ConfigError, match="interior"):
            ScenarioConfig(deltas=[1.0], n_symbols=41, span=30)

    def test_even_frame_rounds_up(self):
        config = ScenarioConfig(deltas=[1.0], n_symbols=300, span=12)
        assert config.n_frame == 301


class TestRunScenario:
    def test_minimal_run_produces_outputs(self, tmp_path):
        path, out_dir = write_config(tmp_path)
        config = load_config(path)
        result = run_scenario(config)
        assert result.passed
        assert result.summary["combos"][0]["papr_sup_gap"] <= 0.05
        files = sorted(p.name for p in out_dir.iterdir())
        assert "mini_summary.json" in files
        kinds = ("empirical_papr", "empirical_power", "theoretical_integral", "closed_form_tx")
        for kind in kinds:
            assert any(kind in f for f in files), f"missing {kind} output"
        summary = json.loads((out_dir / "mini_summary.json").read_text())
        assert summary["passed"] is True

    def test_reruns_are_byte_identical(self, tmp_path):
        path_a, out_a = write_config(tmp_path, name="a.toml")
        run_scenario(load_config(path_a))
        first = {p.name: p.read_bytes() for p in out_a.iterdir()}

        for p in out_a.iterdir():
            p.unlink()
        run_scenario(load_config(path_a))
        second = {p.name: p.read_bytes() for p in out_a.iterdir()}
        assert first == second

    def test_different_seed_changes_empirical_outputs(self, tmp_path):
        path, out_dir = write_config(tmp_path)
        run_scenario(load_config(path))
        baseline = (out_dir / "mini_d1.000_uniform_tx_empirical_papr.csv").read_bytes()
        run_scenario(load_config(path, {"master_seed": 78}))
        changed = (out_dir / "mini_d1.000_uniform_tx_empirical_papr.csv").read_bytes()
        assert baseline != changed

    def test_workers_do_not_change_results(self, tmp_path):
        path, out_dir = write_config(tmp_path)
        run_scenario(load_config(path, {"workers": 1}))
        serial = (out_dir / "mini_d1.000_uniform_tx_empirical_papr.csv").read_bytes()
        for p in out_dir.iterdir():
            p.unlink()
        run_scenario(load_config(path, {"workers": 2}))
        parallel = (out_dir / "mini_d1.000_uniform_tx_empirical_papr.csv").read_bytes()
        assert serial == parallel

    def test_dump_spectra_and_channels(self, tmp_path):
        path, out_dir = write_config(tmp_path)
        run_scenario(load_config(path, {"dump_spectra": True, "dump_channels": True}))
        assert any("spectrum" in p.name for p in out_dir.iterdir())
        dumps = [p for p in out_dir.iterdir() if "channel" in p.name]
        assert len(dumps) == 10  # one per realization
        assert dumps[0].read_text().startswith("seed,K,L,l,k,re,im")


class TestCliEntryPoints:
    def test_run_exit_ok(self, tmp_path, capsys):
        path, _ = write_config(tmp_path)
        assert main(["run", str(path)]) == EXIT_OK
        out = capsys.readouterr().out
        assert "ok" in out and "papr sup gap" in out

    def test_config_error_exit_code(self, tmp_path):
        bad = MINIMAL_TOML.replace('schemes = ["uniform"]', 'schemes = ["optimal_moderate"]')
        bad = bad.replace("delta = [1.0]", "delta = [0.5]").replace("span = 12", "span = 20")
        path, _ = write_config(tmp_path, text=bad, name="bad.toml")
        assert main(["run", str(path)]) == EXIT_CONFIG

    def test_missing_config_is_config_error(self, tmp_path):
        assert main(["run", str(tmp_path / "nope.toml")]) == EXIT_CONFIG

    def test_env_var_output_dir(self, tmp_path, monkeypatch):
        path, _ = write_config(tmp_path)
        env_dir = tmp_path / "env-out"
        monkeypatch.setenv("FTNPAPR_OUTPUT_DIR", str(env_dir))
        assert main(["run", str(path)]) == EXIT_OK
        assert env_dir.exists() and any(env_dir.iterdir())

    def test_verify_ok(self, capsys):
        assert main(["verify", "power"]) == EXIT_OK
        assert "PASS" in capsys.readouterr().out

    def test_verify_bad_tolerance_fails(self, capsys):
        assert main(["verify", "power", "--tolerance", "power_band=1e-12"]) == EXIT_BREACH
        assert "FAIL" in capsys.readouterr().out

    def test_verify_malformed_tolerance_is_config_error(self):
        assert main(["verify", "power", "--tolerance", "power_band"]) == EXIT_CONFIG


class TestVerifyApi:
    def test_all_suites_pass_at_defaults(self):
        report = verify("all")
        assert report.passed
        assert len(report.checks) > 15

    def test_unknown_suite_rejected(self):
        with pytest.raises(ConfigError):
            verify("bogus")


class TestFigures:
    def test_fig1_tiny_profile(self, tmp_path):
        result = reproduce_figure(
            "fig1",
            output_dir=tmp_path,
            deltas=[0.8, 1.0],
            n_symbols=301,
            span=12,
            realizations=6,
            gamma_points=80,
            gap_tolerance=0.2,
        )
        assert result.passed
        svg = tmp_path / "fig1.svg"
        assert svg.exists()
        root = ET.fromstring(svg.read_text())
        assert root.tag.endswith("svg")
        polylines = [e for e in root.iter() if e.tag.endswith("polyline")]
        assert len(polylines) >= 4
        assert (tmp_path / "fig1_summary.json").exists()

    def test_fig3_tiny_profile(self, tmp_path):
        result = reproduce_figure(
            "fig3",
            output_dir=tmp_path,
            deltas=[0.5, 1.0],
            k_tx=2,
            l_rx=2,
            n_symbols=301,
            span=20,
            realizations=6,
            gamma_points=80,
            gap_tolerance=0.3,
        )
        assert (tmp_path / "fig3.svg").exists()
        # fixed received SNR: smaller delta curve sits above at matching
        # thresholds (compare on the overlapping grid region)
        by_delta = {c.delta: c for c in result.combos if c.scheme.value == "uniform"}
        lo, hi = by_delta[0.5], by_delta[1.0]
        common = hi.power_curve.gammas
        interp_lo = np.interp(common, lo.power_curve.gammas, lo.power_curve.probs)
        trusted = hi.closed_form.probs >= 1e-2
        assert np.all(interp_lo[trusted] >= hi.power_curve.probs[trusted] - 0.05)

    def test_unknown_figure_rejected(self, tmp_path):
        with pytest.raises(ConfigError):
            reproduce_figure("fig9", output_dir=tmp_path)
