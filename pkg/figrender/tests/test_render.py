import sys
from pathlib import Path

import matplotlib.image as mpimg
import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))
from synthetic import make_pair, make_run

from figrender import (
    InputError,
    PanelSpec,
    SchemaError,
    load_run,
    render_heatmap,
    render_linecuts,
    render_sixpanel,
)
from figrender.cli import main

GOLDEN = Path(__file__).parent / "golden"


@pytest.fixture
def runs(tmp_path):
    return make_pair(tmp_path)


def pixels(path) -> np.ndarray:
    return mpimg.imread(str(path))


class TestLoadRun:
    def test_loads_manifest_and_stacks(self, runs):
        cold, _ = runs
        run = load_run(cold)
        assert run.times.tolist() == [0.0, 1.0, 2.0]
        assert run.z.shape == (33,)
        assert run.quantity("energy_density").shape == (3, 33)
        assert run.label == "cold"

    def test_quantities_derived(self, runs):
        cold, _ = runs
        run = load_run(cold)
        direct = run.quantity("psi_plus_abs2")
        manual = run.columns["re_psi_plus"] ** 2 + run.columns["im_psi_plus"] ** 2
        assert np.array_equal(direct, manual)

    def test_missing_manifest(self, tmp_path):
        (tmp_path / "void").mkdir()
        with pytest.raises(InputError):
            load_run(tmp_path / "void")

    def test_too_few_snapshots(self, tmp_path):
        run = make_run(tmp_path / "r", "cold", 0.5, 0.0)
        manifest = (run / "manifest.json").read_text()
        import json
        data = json.loads(manifest)
        data["snapshots"] = data["snapshots"][:1]
        (run / "manifest.json").write_text(json.dumps(data))
        with pytest.raises(InputError, match="at least 2"):
            load_run(run)

    def test_missing_column_named(self, tmp_path, runs):
        cold, _ = runs
        snap = cold / "snap_0001_1.0000.csv"
        lines = snap.read_text().splitlines()
        trimmed = [",".join(row.split(",")[:-1]) for row in lines]
        snap.write_text("\n".join(trimmed) + "\n")
        with pytest.raises(SchemaError, match="energy_density"):
            load_run(cold)


class TestHeatmap:
    def test_single_run_uniform_field(self, tmp_path):
        run = make_run(tmp_path / "r", "cold", 0.0, 0.0)
        out = render_heatmap(PanelSpec(run_dirs=[run],
                                       out_path=tmp_path / "one.png"))
        assert out.exists() and out.stat().st_size > 0

    def test_golden_pair(self, runs, tmp_path):
        cold, warm = runs
        out = render_heatmap(PanelSpec(run_dirs=[cold, warm],
                                       quantity="energy_density",
                                       out_path=tmp_path / "pair.png"))
        assert np.array_equal(pixels(out), pixels(GOLDEN / "heatmap_pair.png"))

    def test_rendering_is_repeatable(self, runs, tmp_path):
        cold, warm = runs
        spec_a = PanelSpec(run_dirs=[cold, warm], out_path=tmp_path / "a.png")
        spec_b = PanelSpec(run_dirs=[cold, warm], out_path=tmp_path / "b.png")
        render_heatmap(spec_a)
        render_heatmap(spec_b)
        assert np.array_equal(pixels(tmp_path / "a.png"),
                              pixels(tmp_path / "b.png"))

    def test_read_only(self, runs, tmp_path):
        cold, warm = runs
        before = {p.name: p.read_bytes() for p in sorted(cold.iterdir())}
        render_heatmap(PanelSpec(run_dirs=[cold], out_path=tmp_path / "x.png"))
        after = {p.name: p.read_bytes() for p in sorted(cold.iterdir())}
        assert before == after

    def test_too_many_runs(self, runs, tmp_path):
        cold, warm = runs
        with pytest.raises(InputError):
            PanelSpec(run_dirs=[cold, warm, cold])

    def test_bad_quantity(self, runs):
        cold, _ = runs
        with pytest.raises(SchemaError, match="phase"):
            PanelSpec(run_dirs=[cold], quantity="phase")


class TestLinecuts:
    def test_golden(self, runs, tmp_path):
        cold, _ = runs
        out = render_linecuts(cold, [0.0, 2.0], "psi_plus_abs2",
                              tmp_path / "cuts.png")
        assert np.array_equal(pixels(out), pixels(GOLDEN / "cuts.png"))

    def test_single_time_initial_profile(self, runs, tmp_path):
        cold, _ = runs
        out = render_linecuts(cold, [0.0], "energy_density",
                              tmp_path / "t0.png")
        assert out.exists() and out.stat().st_size > 0

    def test_time_out_of_range_lists_range(self, runs, tmp_path):
        cold, _ = runs
        with pytest.raises(InputError, match=r"\[0\.0, 2\.0\]"):
            render_linecuts(cold, [5.0], "energy_density",
                            tmp_path / "oops.png")


class TestSixPanel:
    def test_golden(self, runs, tmp_path):
        cold, warm = runs
        out = render_sixpanel(cold, warm, tmp_path / "six.png")
        assert np.array_equal(pixels(out), pixels(GOLDEN / "sixpanel.png"))


class TestCli:
    def test_heatmap_command(self, runs, tmp_path, capsys):
        cold, warm = runs
        rc = main(["heatmap", "--run", str(cold), "--run2", str(warm),
                   "--quantity", "energy_density",
                   "--out", str(tmp_path / "h.png")])
        assert rc == 0
        assert (tmp_path / "h.png").exists()

    def test_cuts_command(self, runs, tmp_path):
        cold, _ = runs
        rc = main(["cuts", "--run", str(cold), "--times", "0,2",
                   "--quantity", "psi_minus_abs2",
                   "--out", str(tmp_path / "c.png")])
        assert rc == 0

    def test_sixpanel_command(self, runs, tmp_path):
        cold, warm = runs
        rc = main(["sixpanel", "--run", str(cold), "--run2", str(warm),
                   "--out", str(tmp_path / "s.png")])
        assert rc == 0

    def test_bad_run_dir_exit_code(self, tmp_path):
        rc = main(["heatmap", "--run", str(tmp_path / "nope"),
                   "--out", str(tmp_path / "x.png")])
        assert rc == 2

    def test_bad_times_exit_code(self, runs, tmp_path):
        cold, _ = runs
        rc = main(["cuts", "--run", str(cold), "--times", "99",
                   "--out", str(tmp_path / "x.png")])
        assert rc == 2
