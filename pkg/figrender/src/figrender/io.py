"""Read-only access to run directories (manifest.json + snapshot CSVs)."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import InputError, SchemaError

CSV_COLUMNS = ("z", "re_psi_plus", "im_psi_plus",
               "re_psi_minus", "im_psi_minus", "energy_density")

#: quantities derivable from the snapshot schema
QUANTITIES = ("energy_density", "psi_plus_abs2", "psi_minus_abs2")


@dataclass
class RunData:
    """All snapshots of one run, stacked on a common grid."""

    path: Path
    manifest: dict
    times: np.ndarray            # (n_t,)
    z: np.ndarray                # (n_z,)
    columns: dict                # name -> (n_t, n_z) array

    def quantity(self, name: str) -> np.ndarray:
        if name not in QUANTITIES:
            raise SchemaError(
                f"unknown quantity {name!r}; choose from {QUANTITIES}")
        if name == "energy_density":
            return self.columns["energy_density"]
        if name == "psi_plus_abs2":
            return (self.columns["re_psi_plus"] ** 2
                    + self.columns["im_psi_plus"] ** 2)
        return (self.columns["re_psi_minus"] ** 2
                + self.columns["im_psi_minus"] ** 2)

    @property
    def label(self) -> str:
        return self.manifest.get("model", self.path.name)


def load_run(run_dir: str | Path) -> RunData:
    """Load a run directory, validating the snapshot schema."""
    path = Path(run_dir)
    manifest_path = path / "manifest.json"
    if not manifest_path.exists():
        raise InputError(f"no manifest.json in {path}")
    manifest = json.loads(manifest_path.read_text(encoding="utf-8"))
    entries = manifest.get("snapshots", [])
    if len(entries) < 2:
        raise InputError(
            f"{path} holds {len(entries)} snapshot(s); need at least 2")
    times = []
    stacks: dict = {name: [] for name in CSV_COLUMNS}
    z_ref = None
    for entry in entries:
        fpath = path / entry["file"]
        with open(fpath, "r", encoding="utf-8") as fh:
            header = fh.readline().strip().split(",")
            for required in CSV_COLUMNS:
                if required not in header:
                    raise SchemaError(
                        f"{fpath.name}: missing column {required!r}")
            data = np.loadtxt(fh, delimiter=",", ndmin=2)
        cols = {name: data[:, header.index(name)] for name in CSV_COLUMNS}
        if z_ref is None:
            z_ref = cols["z"]
        elif cols["z"].shape != z_ref.shape:
            raise SchemaError(f"{fpath.name}: grid size differs within run")
        times.append(float(entry["t"]))
        for name in CSV_COLUMNS:
            stacks[name].append(cols[name])
    columns = {name: np.array(rows) for name, rows in stacks.items()}
    return RunData(path=path, manifest=manifest, times=np.array(times),
                   z=z_ref, columns=columns)
