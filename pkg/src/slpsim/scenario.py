"""Run configuration, experiment orchestration and snapshot output.

A run follows the retrieval timing: a Gaussian pulse is already stored
in the medium, the drive switches on at t = 0 with the tanh envelope,
and the selected model is integrated with periodic snapshots.

Output layout (one directory per run):

* ``snap_<index>_<t>.csv`` per snapshot, header exactly
  ``z,re_psi_plus,im_psi_plus,re_psi_minus,im_psi_minus,energy_density``,
  LF newlines, 17 significant digits per value,
* ``manifest.json`` with the flat config echo, derived quantities,
  warnings and the snapshot table,
* ``run.log`` with the wall time (kept out of the manifest so that
  identical configs produce byte-identical manifests and CSVs).

Outputs use z in L_p, t in T_s, fields normalized to the stored pulse
amplitude, and energy density in units of cos^2(theta_0), i.e.
``energy = (cos^2 theta / cos^2 theta_0) (|psi+|^2 + |psi-|^2)``.
"""

from __future__ import annotations

import dataclasses
import json
import os
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from .adiabatic import advance, init_solver
from .analytic import InitialPulse, evolve_closed_form
from .errors import ComparisonError, ConfigError
from .fullmodel import run_full
from .model import (
    CouplingSchedule,
    GridSpec,
    MediumParams,
    beta,
    quasi_standing_schedule,
    schedule_eval,
)
from .thermal import ThermalParams, run_thermal

MODELS = ("analytic", "adiabatic", "full", "thermal")

CSV_HEADER = "z,re_psi_plus,im_psi_plus,re_psi_minus,im_psi_minus,energy_density"

SCHEME_NAMES = {
    "analytic": "closed-form",
    "adiabatic": "semi-lagrangian-characteristics",
    "full": "etd2rk-quasistatic-splitting",
    "thermal": "crank-nicolson",
}

_GRID_KEYS = ("n_z", "z_min", "z_max", "cfl")


@dataclass(frozen=True)
class RunConfig:
    """Complete, deterministic description of one run (no RNG anywhere)."""

    model: str = "adiabatic"
    kappa_plus_sq: float = 0.5
    phi: float = 0.0
    gamma_bc: float = 0.0
    gamma_ba_Ts: float = 100.0
    l_a: float = 0.1
    cos2_theta0: float = 0.01
    grid: GridSpec = field(default_factory=GridSpec)
    t_end: float = 10.0
    snapshot_every: float = 0.1
    M: int = 8
    d_coef: float | None = None
    output_dir: str = "out"

    def __post_init__(self) -> None:
        if self.model not in MODELS:
            raise ConfigError(f"model must be one of {MODELS}, got {self.model!r}")
        if not 0.5 <= self.kappa_plus_sq <= 1.0:
            raise ConfigError(
                f"kappa_plus_sq must lie in [0.5, 1], got {self.kappa_plus_sq}"
            )
        if self.t_end <= 0:
            raise ConfigError(f"t_end must be > 0, got {self.t_end}")
        if self.snapshot_every <= 0:
            raise ConfigError(f"snapshot_every must be > 0, got {self.snapshot_every}")
        if self.M < 2:
            raise ConfigError(f"M must be >= 2, got {self.M}")
        if self.gamma_bc < 0:
            raise ConfigError(f"gamma_bc must be >= 0, got {self.gamma_bc}")
        if self.gamma_ba_Ts <= 0:
            raise ConfigError(f"gamma_ba_Ts must be > 0, got {self.gamma_ba_Ts}")
        if self.d_coef is not None and self.d_coef < 0:
            raise ConfigError(f"d_coef must be >= 0, got {self.d_coef}")

    # --- derived builders -------------------------------------------------

    def schedule(self) -> CouplingSchedule:
        return quasi_standing_schedule(
            self.kappa_plus_sq, self.phi, self.cos2_theta0, T_s=1.0, kind="tanh"
        )

    def medium(self) -> MediumParams:
        return MediumParams(
            gamma_ba=self.gamma_ba_Ts, gamma_bc=self.gamma_bc,
            l_a=self.l_a, L=self.grid.z_max - self.grid.z_min,
        )

    def pulse(self) -> InitialPulse:
        return InitialPulse(amplitude=1.0, pulse_length=1.0, center=0.0)

    def snapshot_times(self) -> list[float]:
        n = int(np.floor(self.t_end / self.snapshot_every + 1e-9))
        return [i * self.snapshot_every for i in range(n + 1)]

    # --- serialization ----------------------------------------------------

    def to_dict(self) -> dict:
        d = dataclasses.asdict(self)
        d["grid"] = {k: getattr(self.grid, k) for k in _GRID_KEYS}
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"


def parse_config(text: str) -> RunConfig:
    """Parse a JSON run configuration, rejecting unknown keys."""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(
            f"malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc
    if not isinstance(raw, dict):
        raise ConfigError("config must be a JSON object")

    known = {f.name for f in dataclasses.fields(RunConfig)}
    kwargs: dict = {}
    for key, value in raw.items():
        if key not in known:
            raise ConfigError(f"unknown config key {key!r}")
        if key == "grid":
            if not isinstance(value, dict):
                raise ConfigError("grid must be an object")
            for gk in value:
                if gk not in _GRID_KEYS:
                    raise ConfigError(f"unknown grid key {gk!r}")
            kwargs["grid"] = GridSpec(**{k: value[k] for k in value})
        else:
            kwargs[key] = value
    return RunConfig(**kwargs)


@dataclass
class RunManifest:
    """Echo of the config plus derived quantities; fully reproducible."""

    config: RunConfig
    beta: float
    kappa_minus_sq: float
    scheme: str
    version: str
    warnings: list
    snapshots: list            # [{"index": i, "t": t, "file": name}]
    wall_time_s: float = 0.0   # reported in run.log, not in manifest.json

    def to_dict(self) -> dict:
        d = self.config.to_dict()
        grid = d.pop("grid")
        d.update(grid)
        d.update(
            beta=self.beta,
            kappa_minus_sq=self.kappa_minus_sq,
            scheme=self.scheme,
            version=self.version,
            normalization="z in L_p, t in T_s, fields in units of the stored "
                           "amplitude, energy density in units of cos^2(theta_0)",
            warnings=list(self.warnings),
            snapshots=self.snapshots,
        )
        return d


def run_scenario(cfg: RunConfig, out_dir: str | Path | None = None) -> RunManifest:
    """Execute one run and write snapshots plus manifest to disk."""
    t0 = time.perf_counter()
    out = Path(out_dir if out_dir is not None else cfg.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    probe = out / ".write_test"
    probe.write_bytes(b"")          # fail on unwritable output before computing
    probe.unlink()

    snaps, warnings = _compute_snapshots(cfg)

    z = cfg.grid.zgrid()
    entries = []
    for i, (t, psi_p, psi_m, energy) in enumerate(snaps):
        name = f"snap_{i:04d}_{t:.4f}.csv"
        _write_snapshot_csv(out / name, z, psi_p, psi_m, energy)
        entries.append({"index": i, "t": t, "file": name})

    manifest = RunManifest(
        config=cfg,
        beta=beta(cfg.schedule()),
        kappa_minus_sq=1.0 - cfg.kappa_plus_sq,
        scheme=SCHEME_NAMES[cfg.model],
        version=__version__,
        warnings=warnings,
        snapshots=entries,
        wall_time_s=0.0,
    )
    _atomic_write(out / "manifest.json",
                  json.dumps(manifest.to_dict(), indent=2, sort_keys=True) + "\n")
    manifest.wall_time_s = time.perf_counter() - t0
    (out / "run.log").write_text(
        f"wall_time_s={manifest.wall_time_s:.3f}\n", encoding="utf-8"
    )
    return manifest


def _compute_snapshots(cfg: RunConfig):
    sched = cfg.schedule()
    medium = cfg.medium()
    pulse = cfg.pulse()
    grid = cfg.grid
    times = cfg.snapshot_times()
    warnings: list[str] = []
    snaps = []

    if cfg.model == "analytic":
        for t in times:
            fld = evolve_closed_form(pulse, sched, medium, grid, t)
            _, _, v_rel = schedule_eval(sched, t)
            rho = np.abs(fld.psi_plus) ** 2 + np.abs(fld.psi_minus) ** 2
            snaps.append((t, fld.psi_plus, fld.psi_minus, v_rel * rho))
    elif cfg.model == "adiabatic":
        state = init_solver(pulse, sched, medium, grid)
        for t in times:
            state = advance(state, t)
            _, _, v_rel = schedule_eval(sched, t)
            fld = state.field
            rho = np.abs(fld.psi_plus) ** 2 + np.abs(fld.psi_minus) ** 2
            snaps.append((t, fld.psi_plus, fld.psi_minus, v_rel * rho))
        warnings.extend(state.warnings)
    elif cfg.model == "full":
        full = run_full(pulse, sched, medium, grid, M=cfg.M, t_end=cfg.t_end,
                        snapshot_every=cfg.snapshot_every)
        skipped = False
        zeros = np.zeros(grid.n_z, dtype=complex)
        for snap in full:
            if snap.psi_plus is None:
                psi_p, psi_m = zeros, zeros
                skipped = True
            else:
                psi_p, psi_m = snap.psi_plus, snap.psi_minus
            energy = (np.abs(snap.e_plus) ** 2 + np.abs(snap.e_minus) ** 2) \
                / cfg.cos2_theta0
            snaps.append((snap.t, psi_p, psi_m, energy))
        if skipped:
            warnings.append(
                "polariton reconstruction skipped where the drive is off"
            )
    else:  # thermal
        thermal = ThermalParams(d_coef=cfg.d_coef)
        runs = run_thermal(pulse, sched, medium, grid, thermal,
                           t_end=cfg.t_end, snapshot_every=cfg.snapshot_every)
        kp, km = sched.kappa_plus, sched.kappa_minus
        for snap in runs:
            _, _, v_rel = schedule_eval(sched, snap.t)
            snaps.append((snap.t, kp * snap.psi, km * snap.psi,
                          v_rel * np.abs(snap.psi) ** 2))
    return snaps, warnings


def _write_snapshot_csv(path: Path, z, psi_p, psi_m, energy) -> None:
    cols = (z, psi_p.real, psi_p.imag, psi_m.real, psi_m.imag, energy)
    for col in cols:
        if not np.all(np.isfinite(col)):
            raise ConfigError(f"refusing to write non-finite values to {path.name}")
    lines = [CSV_HEADER]
    for row in zip(*cols):
        lines.append(",".join(f"{v:.16e}" for v in row))
    _atomic_write(path, "\n".join(lines) + "\n")


def _atomic_write(path: Path, text: str) -> None:
    tmp = path.with_name(path.name + ".tmp")
    with open(tmp, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
    os.replace(tmp, path)


def load_snapshot_csv(path: str | Path):
    """Read one snapshot CSV back; returns (z, psi_plus, psi_minus, energy)."""
    path = Path(path)
    with open(path, "r", encoding="utf-8") as fh:
        header = fh.readline().strip()
        if header != CSV_HEADER:
            raise ComparisonError(f"{path.name}: unexpected header {header!r}")
        data = np.loadtxt(fh, delimiter=",", ndmin=2)
    z = data[:, 0]
    psi_p = data[:, 1] + 1j * data[:, 2]
    psi_m = data[:, 3] + 1j * data[:, 4]
    return z, psi_p, psi_m, data[:, 5]


def load_manifest(run_dir: str | Path) -> dict:
    path = Path(run_dir) / "manifest.json"
    if not path.exists():
        raise ComparisonError(f"no manifest.json in {run_dir}")
    return json.loads(path.read_text(encoding="utf-8"))


def compare_runs(dir_a: str | Path, dir_b: str | Path,
                 norm: str = "l2") -> dict:
    """Per-snapshot field distances between two run directories.

    Grids and snapshot times must match exactly; no interpolation is
    attempted.  Distances are reported for both polariton components and
    the energy density, per snapshot plus an overall maximum.
    """
    if norm not in ("l2", "linf"):
        raise ConfigError(f"norm must be 'l2' or 'linf', got {norm!r}")
    man_a = load_manifest(dir_a)
    man_b = load_manifest(dir_b)
    for key in ("n_z", "z_min", "z_max"):
        if man_a[key] != man_b[key]:
            raise ComparisonError(
                f"grid mismatch: {key} differs ({man_a[key]} vs {man_b[key]})"
            )
    snaps_a = man_a["snapshots"]
    snaps_b = man_b["snapshots"]
    if len(snaps_a) != len(snaps_b):
        raise ComparisonError(
            f"snapshot count differs ({len(snaps_a)} vs {len(snaps_b)})"
        )
    rows = []
    overall = {"psi_plus": 0.0, "psi_minus": 0.0, "energy_density": 0.0}
    for sa, sb in zip(snaps_a, snaps_b):
        if abs(sa["t"] - sb["t"]) > 1e-9:
            raise ComparisonError(
                f"snapshot times differ at index {sa['index']} "
                f"({sa['t']} vs {sb['t']})"
            )
        za, pa, ma, ea = load_snapshot_csv(Path(dir_a) / sa["file"])
        zb, pb, mb, eb = load_snapshot_csv(Path(dir_b) / sb["file"])
        if za.shape != zb.shape or np.max(np.abs(za - zb)) > 1e-12:
            raise ComparisonError(f"z grids differ in snapshot {sa['index']}")
        dz = za[1] - za[0]
        row = {"index": sa["index"], "t": sa["t"]}
        for name, da, db in (("psi_plus", pa, pb), ("psi_minus", ma, mb),
                             ("energy_density", ea, eb)):
            diff = np.abs(da - db)
            if norm == "l2":
                dist = float(np.sqrt(np.sum(diff ** 2) * dz))
            else:
                dist = float(diff.max()) if diff.size else 0.0
            row[name] = dist
            overall[name] = max(overall[name], dist)
        rows.append(row)
    return {"norm": norm, "per_snapshot": rows, "max": overall}
