"""Config schema, preset round-trips, CSV/JSON emission and exit codes."""

import csv
import json
import subprocess
import sys

import pytest

from spinhall.cli import CSV_HEADER, main
from spinhall.config import (
    config_from_scenario,
    scenario_from_config,
    validate_config,
)
from spinhall.presets import PRESET_NAMES, preset


def run_cli(args, cwd):
    return subprocess.run(
        [sys.executable, "-m", "spinhall", *args],
        cwd=cwd,
        capture_output=True,
        text=True,
    )


class TestConfigRoundTrip:
    @pytest.mark.parametrize("name", PRESET_NAMES)
    def test_preset_round_trip(self, name):
        scenario, spec = preset(name)
        doc = config_from_scenario(scenario, spec, preset_name=name)
        reloaded = json.loads(json.dumps(doc))
        scenario2, spec2 = scenario_from_config(reloaded)
        assert scenario2 == scenario
        assert spec2 == spec

    def test_partial_config_filled_from_preset(self):
        doc = {"preset": "fig2", "qw": {"omega_c": 3.0}}
        scenario, spec = scenario_from_config(doc)
        base, base_spec = preset("fig2")
        assert scenario.qw.omega_c == 3.0
        assert scenario.qw.gamma_bl == base.qw.gamma_bl
        assert scenario.epsilon1 == base.epsilon1
        assert spec == base_spec

    def test_beam_spec_round_trip(self):
        doc = config_from_scenario(*preset("fig2"), preset_name="fig2")
        doc["beam"].update(waist_um=925.0, grid_half_extent=0.01, grid_samples=512)
        assert validate_config(doc) == []
        scenario, spec = scenario_from_config(doc)
        assert scenario.beam is not None
        assert scenario.beam.waist_um == 925.0
        again = config_from_scenario(scenario, spec, preset_name="fig2")
        assert again["beam"] == doc["beam"]


class TestValidate:
    def test_presets_validate_clean(self):
        for name in PRESET_NAMES:
            scenario, spec = preset(name)
            doc = config_from_scenario(scenario, spec, preset_name=name)
            assert validate_config(doc) == []

    def test_theta_window_containing_zero(self):
        doc = config_from_scenario(*preset("fig2"), preset_name="fig2")
        doc["sweep"]["lo"] = 0.0
        assert any("theta must lie in (0, pi/2)" in p for p in validate_config(doc))

    def test_negative_rate_names_the_field(self):
        doc = {"preset": "fig2", "qw": {"gamma_bl": -1.0}}
        assert any("qw.gamma_bl" in p for p in validate_config(doc))

    def test_unknown_keys_rejected(self):
        doc = {"preset": "fig2", "qw": {"bogus": 1.0}, "extra": {}}
        problems = validate_config(doc)
        assert any("qw.bogus" in p for p in problems)
        assert any("unknown top-level key 'extra'" in p for p in problems)

    def test_missing_sections_reported_without_preset(self):
        problems = validate_config({"qw": {}})
        assert any("missing section 'stack'" in p for p in problems)
        assert any("missing key qw.beta" in p for p in problems)

    def test_complex_encoding_enforced(self):
        doc = config_from_scenario(*preset("fig2"), preset_name="fig2")
        doc["stack"]["epsilon1"] = 2.22
        assert any("stack.epsilon1" in p and "[re, im]" in p for p in validate_config(doc))

    def test_unknown_preset_reported(self):
        assert any("unknown preset" in p for p in validate_config({"preset": "fig99"}))

    def test_grid_keys_require_waist(self):
        doc = config_from_scenario(*preset("fig2"), preset_name="fig2")
        doc["beam"]["grid_samples"] = 512
        assert any("requires beam.waist_um" in p for p in validate_config(doc))

    def test_non_theta_sweep_needs_fixed_theta(self):
        # no preset to refill the deleted key, so the gap must be diagnosed
        doc = config_from_scenario(*preset("fig5a"))
        del doc["sweep"]["fixed"]
        assert any("sweep.fixed.theta" in p for p in validate_config(doc))


class TestCliRuns:
    def test_fig2_end_to_end(self, tmp_path):
        result = run_cli(["--preset", "fig2", "--out", "fig2.csv"], tmp_path)
        assert result.returncode == 0, result.stderr
        with open(tmp_path / "fig2.csv", newline="") as handle:
            reader = csv.reader(handle)
            header = next(reader)
            rows = list(reader)
        assert header == CSV_HEADER.split(",")
        assert len(rows) == 2001
        summary = json.loads((tmp_path / "fig2.json").read_text())
        assert summary["preset"] == "fig2"
        assert summary["rows"] == 2001
        assert summary["resonance"]["ratio_em_peak"] > 1e2
        assert 0.90 <= summary["resonance"]["theta_star"] <= 1.05
        assert summary["effective_epsilon2"][1] > 0  # absorbing medium

    def test_csv_reparses_to_the_last_digit(self, tmp_path):
        from spinhall.sweep import run_sweep

        scenario, spec = preset("fig2")
        rows = run_sweep(scenario, spec)
        result = run_cli(["--preset", "fig2", "--out", "check.csv", "--format", "csv"], tmp_path)
        assert result.returncode == 0
        with open(tmp_path / "check.csv", newline="") as handle:
            reader = csv.reader(handle)
            next(reader)
            parsed = list(reader)
        assert len(parsed) == len(rows)
        for row, text in zip(rows, parsed):
            assert float(text[0]) == row.value
            assert float(text[1]) == row.re_abs
            assert float(text[3]) == row.ratio_em
            assert float(text[7]) == row.delta_h_plus_lambda

    def test_zero_beta_config_reports_unit_epsilon2(self, tmp_path):
        doc = config_from_scenario(*preset("fig2"), preset_name="fig2")
        doc["qw"]["beta"] = 0.0
        doc["sweep"]["samples"] = 21
        config_path = tmp_path / "custom.json"
        config_path.write_text(json.dumps(doc))
        result = run_cli(["--config", "custom.json", "--out", "z.csv"], tmp_path)
        assert result.returncode == 0, result.stderr
        summary = json.loads((tmp_path / "z.json").read_text())
        assert summary["effective_epsilon2"] == [1.0, 0.0]

    def test_all_vacuum_scenario_survives_the_pipeline(self, tmp_path):
        # every row is a flagged 0/0 point; the CSV carries nan and the
        # summary degrades its peak and resonance fields to null
        doc = config_from_scenario(*preset("fig2"), preset_name="fig2")
        doc["qw"]["beta"] = 0.0
        doc["stack"]["epsilon1"] = [1.0, 0.0]
        doc["stack"]["epsilon3"] = [1.0, 0.0]
        doc["sweep"]["samples"] = 11
        (tmp_path / "scenario.json").write_text(json.dumps(doc))
        result = run_cli(["--config", "scenario.json", "--out", "vac.csv"], tmp_path)
        assert result.returncode == 0, result.stderr
        with open(tmp_path / "vac.csv", newline="") as handle:
            reader = csv.reader(handle)
            next(reader)
            rows = list(reader)
        assert len(rows) == 11
        for row in rows:
            # reflection is rounding residue; the flags carry the signal
            assert float(row[1]) < 1e-14 and float(row[2]) < 1e-14
            assert row[9] == "hv"
        summary = json.loads((tmp_path / "vac.json").read_text())
        assert summary["effective_epsilon2"] == [1.0, 0.0]
        assert summary["abs_delta_h_plus_lambda_peak"] is None
        assert summary["abs_delta_v_plus_lambda_peak"] is None

    def test_lambda_override_and_json_only(self, tmp_path):
        result = run_cli(
            ["--preset", "fig2", "--out", "s.json", "--format", "json", "--lambda-um", "2.0"],
            tmp_path,
        )
        assert result.returncode == 0, result.stderr
        summary = json.loads((tmp_path / "s.json").read_text())
        assert summary["lambda_um"] == 2.0
        assert summary["csv"] is None
        assert not (tmp_path / "s.csv").exists()

    def test_explicit_resonance_window(self, tmp_path):
        result = run_cli(
            ["--preset", "fig5a", "--out", "r.csv", "--find-resonance", "0.9,1.05"], tmp_path
        )
        assert result.returncode == 0, result.stderr
        summary = json.loads((tmp_path / "r.json").read_text())
        assert summary["resonance"] is not None
        assert 0.9 <= summary["resonance"]["theta_star"] <= 1.05

    def test_threads_flag_and_env(self, tmp_path, monkeypatch):
        a = run_cli(["--preset", "fig5a", "--out", "a.csv", "--threads", "4"], tmp_path)
        assert a.returncode == 0
        monkeypatch.setenv("SPINHALL_THREADS", "2")
        b = subprocess.run(
            [sys.executable, "-m", "spinhall", "--preset", "fig5a", "--out", "b.csv"],
            cwd=tmp_path, capture_output=True, text=True,
        )
        assert b.returncode == 0
        assert (tmp_path / "a.csv").read_text() == (tmp_path / "b.csv").read_text()


class TestCliFailures:
    def test_malformed_json_exits_2(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text('{"qw": }')
        result = run_cli(["--config", "bad.json"], tmp_path)
        assert result.returncode == 2
        assert "line 1" in result.stderr

    def test_validation_failure_exits_2(self, tmp_path):
        doc = {"preset": "fig2", "qw": {"gamma_bl": -1.0}}
        path = tmp_path / "neg.json"
        path.write_text(json.dumps(doc))
        result = run_cli(["--config", "neg.json"], tmp_path)
        assert result.returncode == 2
        assert "qw.gamma_bl" in result.stderr

    def test_unknown_preset_exits_2(self, tmp_path):
        result = run_cli(["--preset", "fig99"], tmp_path)
        assert result.returncode == 2  # argparse choice failure

    def test_numerical_failure_exits_3(self, tmp_path):
        doc = config_from_scenario(*preset("fig2"), preset_name="fig2")
        doc["qw"].update(
            gamma_bl=0.0, gamma_bd=0.0, gamma_cl=0.0, gamma_cd=0.0,
            gamma_dl=0.0, gamma_dd=0.0, delta=0.0, omega_c=0.0,
        )
        doc["sweep"]["samples"] = 5
        path = tmp_path / "dead.json"
        path.write_text(json.dumps(doc))
        result = run_cli(["--config", "dead.json", "--out", "d.csv"], tmp_path)
        assert result.returncode == 3
        assert "numerical failure" in result.stderr

    def test_in_process_main_matches_subprocess_contract(self, tmp_path):
        code = main(["--preset", "fig5b", "--out", str(tmp_path / "m.csv")])
        assert code == 0
        assert (tmp_path / "m.csv").exists() and (tmp_path / "m.json").exists()
