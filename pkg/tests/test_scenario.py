import dataclasses
import hashlib
import json
from pathlib import Path

import numpy as np
import pytest

from slpsim import ComparisonError, ConfigError, GridSpec, RunConfig
from slpsim.cli import main
from slpsim.scenario import (
    CSV_HEADER,
    compare_runs,
    load_snapshot_csv,
    parse_config,
    run_scenario,
)

FAST_GRID = {"n_z": 128, "z_min": -10.0, "z_max": 10.0, "cfl": 0.5}


def fast_config(**over) -> RunConfig:
    base = dict(model="analytic", t_end=2.0, snapshot_every=0.5,
                grid=GridSpec(**FAST_GRID))
    base.update(over)
    return RunConfig(**base)


def hash_dir(path: Path) -> dict:
    return {p.name: hashlib.sha256(p.read_bytes()).hexdigest()
            for p in sorted(path.iterdir()) if p.name != "run.log"}


class TestParseConfig:
    def test_empty_object_gives_defaults(self):
        cfg = parse_config("{}")
        assert cfg == RunConfig()
        assert cfg.kappa_plus_sq == 0.5          # standing-wave run
        assert cfg.gamma_bc == 0.0
        assert cfg.gamma_ba_Ts == 100.0
        assert cfg.l_a == 0.1
        assert cfg.grid == GridSpec(n_z=1024, z_min=-10.0, z_max=10.0, cfl=0.5)
        assert cfg.t_end == 10.0
        assert cfg.snapshot_every == 0.1
        assert cfg.M == 8

    def test_kappa_minus_derived(self, tmp_path):
        cfg = parse_config('{"kappa_plus_sq": 0.55}')
        man = run_scenario(fast_config(kappa_plus_sq=0.55),
                           out_dir=tmp_path / "r")
        assert man.kappa_minus_sq == pytest.approx(0.45)
        assert cfg.kappa_plus_sq == 0.55

    def test_out_of_range_kappa(self):
        with pytest.raises(ConfigError):
            parse_config('{"kappa_plus_sq": 1.2}')
        with pytest.raises(ConfigError):
            parse_config('{"kappa_plus_sq": 0.3}')

    def test_unknown_key_named(self):
        with pytest.raises(ConfigError, match="wavelength"):
            parse_config('{"wavelength": 780}')
        with pytest.raises(ConfigError, match="dx"):
            parse_config('{"grid": {"dx": 0.1}}')

    def test_malformed_json_reports_position(self):
        with pytest.raises(ConfigError, match=r"line 1"):
            parse_config('{"model": }')

    def test_bad_model(self):
        with pytest.raises(ConfigError):
            parse_config('{"model": "quantum"}')

    @pytest.mark.parametrize("cfg", [
        RunConfig(),
        RunConfig(model="thermal", kappa_plus_sq=0.55, d_coef=0.3),
        RunConfig(model="full", M=4, gamma_ba_Ts=30.0, phi=0.5,
                  grid=GridSpec(n_z=256, z_min=-5.0, z_max=5.0, cfl=0.4)),
    ])
    def test_round_trip(self, cfg):
        assert parse_config(cfg.to_json()) == cfg


class TestRunScenario:
    def test_manifest_contents(self, tmp_path):
        cfg = fast_config(model="analytic", kappa_plus_sq=0.55)
        man = run_scenario(cfg, out_dir=tmp_path / "run")
        assert man.beta == pytest.approx(0.23452078799117148, abs=1e-12)
        assert man.kappa_minus_sq == pytest.approx(0.45)
        data = json.loads((tmp_path / "run" / "manifest.json").read_text())
        assert data["beta"] == pytest.approx(man.beta)
        assert data["n_z"] == 128
        assert data["warnings"] == []
        assert len(data["snapshots"]) == 5
        assert data["snapshots"][2]["t"] == pytest.approx(1.0)
        assert "wall_time" not in json.dumps(data)

    def test_snapshot_files_and_schema(self, tmp_path):
        cfg = fast_config()
        run_scenario(cfg, out_dir=tmp_path / "run")
        files = sorted((tmp_path / "run").glob("snap_*.csv"))
        assert len(files) == 5
        assert files[0].name == "snap_0000_0.0000.csv"
        text = files[-1].read_text()
        assert text.splitlines()[0] == CSV_HEADER
        assert "\r" not in text
        z, psi_p, psi_m, energy = load_snapshot_csv(files[-1])
        assert z.shape == (128,)
        assert np.all(np.isfinite(z))
        assert np.all(energy >= 0)

    def test_determinism_byte_identical(self, tmp_path):
        cfg = fast_config(model="adiabatic")
        run_scenario(cfg, out_dir=tmp_path / "a")
        run_scenario(cfg, out_dir=tmp_path / "b")
        assert hash_dir(tmp_path / "a") == hash_dir(tmp_path / "b")

    @pytest.mark.parametrize("model", ["analytic", "adiabatic", "full", "thermal"])
    def test_all_models_emit_finite_snapshots(self, tmp_path, model):
        cfg = fast_config(model=model, kappa_plus_sq=0.55, t_end=1.0,
                          snapshot_every=0.5, M=4)
        man = run_scenario(cfg, out_dir=tmp_path / model)
        for entry in man.snapshots:
            z, psi_p, psi_m, energy = load_snapshot_csv(
                tmp_path / model / entry["file"])
            for col in (z, psi_p.real, psi_p.imag, energy):
                assert np.all(np.isfinite(col))

    def test_unwritable_output_fails_before_compute(self, tmp_path):
        blocker = tmp_path / "blocker"
        blocker.write_text("not a directory")
        cfg = fast_config()
        with pytest.raises(OSError):
            run_scenario(cfg, out_dir=blocker / "run")


class TestCompareRuns:
    def test_self_comparison_zero(self, tmp_path):
        cfg = fast_config(model="analytic", kappa_plus_sq=0.55)
        run_scenario(cfg, out_dir=tmp_path / "a")
        report = compare_runs(tmp_path / "a", tmp_path / "a")
        assert report["max"]["psi_plus"] == 0.0
        assert report["max"]["energy_density"] == 0.0

    def test_analytic_vs_adiabatic_small(self, tmp_path):
        grid = GridSpec(n_z=1024, z_min=-10.0, z_max=10.0)
        for model, name in (("analytic", "a"), ("adiabatic", "b")):
            cfg = RunConfig(model=model, kappa_plus_sq=0.55, t_end=5.0,
                            snapshot_every=1.0, grid=grid)
            run_scenario(cfg, out_dir=tmp_path / name)
        report = compare_runs(tmp_path / "a", tmp_path / "b", norm="linf")
        assert report["max"]["psi_plus"] <= 1e-3
        assert report["max"]["psi_minus"] <= 1e-3

    def test_grid_mismatch_rejected(self, tmp_path):
        run_scenario(fast_config(), out_dir=tmp_path / "a")
        other = fast_config(grid=GridSpec(n_z=256, z_min=-10.0, z_max=10.0))
        run_scenario(other, out_dir=tmp_path / "b")
        with pytest.raises(ComparisonError, match="n_z"):
            compare_runs(tmp_path / "a", tmp_path / "b")

    def test_missing_manifest(self, tmp_path):
        (tmp_path / "empty").mkdir()
        run_scenario(fast_config(), out_dir=tmp_path / "a")
        with pytest.raises(ComparisonError):
            compare_runs(tmp_path / "a", tmp_path / "empty")


class TestCli:
    def test_defaults_prints_valid_config(self, capsys):
        assert main(["defaults"]) == 0
        out = capsys.readouterr().out
        assert parse_config(out) == RunConfig()

    def test_run_and_compare(self, tmp_path, capsys):
        cfg_file = tmp_path / "cfg.json"
        cfg_file.write_text(fast_config().to_json())
        assert main(["run", "--config", str(cfg_file),
                     "--out", str(tmp_path / "a")]) == 0
        assert main(["run", "--config", str(cfg_file), "--model", "adiabatic",
                     "--out", str(tmp_path / "b")]) == 0
        assert main(["compare", "--a", str(tmp_path / "a"),
                     "--b", str(tmp_path / "b"), "--norm", "linf"]) == 0
        out = capsys.readouterr().out
        assert "max (linf)" in out

    def test_config_error_exit_code(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text('{"kappa_plus_sq": 7}')
        assert main(["run", "--config", str(bad)]) == 2

    def test_missing_config_is_io_error(self, tmp_path):
        assert main(["run", "--config", str(tmp_path / "nope.json")]) == 4

    def test_numeric_error_exit_code(self, tmp_path, monkeypatch, capsys):
        from slpsim import NumericError
        import slpsim.cli as cli

        def boom(cfg):
            raise NumericError("synthetic blow-up")

        monkeypatch.setattr(cli, "run_scenario", boom)
        cfg_file = tmp_path / "cfg.json"
        cfg_file.write_text(fast_config().to_json())
        assert main(["run", "--config", str(cfg_file)]) == 3

    def test_compare_mismatch_exit_code(self, tmp_path):
        run_scenario(fast_config(), out_dir=tmp_path / "a")
        other = fast_config(grid=GridSpec(n_z=256, z_min=-10.0, z_max=10.0))
        run_scenario(other, out_dir=tmp_path / "b")
        assert main(["compare", "--a", str(tmp_path / "a"),
                     "--b", str(tmp_path / "b")]) == 2
