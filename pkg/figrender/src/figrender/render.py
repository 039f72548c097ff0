"""Figure assembly: space-time heatmaps, line cuts and the 6-panel view.

Rendering is deterministic: fixed style, fixed sizes, no timestamps in
the PNG metadata. Directories are only ever read.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from .errors import InputError, SchemaError
from .io import QUANTITIES, load_run

_QUANTITY_LABELS = {
    "energy_density": "probe energy density",
    "psi_plus_abs2": "|psi+|^2",
    "psi_minus_abs2": "|psi-|^2",
}

_SAVE_OPTS = dict(dpi=110, metadata={"Software": None})


@dataclass
class PanelSpec:
    """One heatmap figure: one or two runs of a single quantity."""

    run_dirs: Sequence
    quantity: str = "energy_density"
    colormap: str = "inferno"
    z_range: Optional[tuple] = None
    t_range: Optional[tuple] = None
    out_path: str = "heatmap.png"

    def __post_init__(self) -> None:
        if not 1 <= len(self.run_dirs) <= 2:
            raise InputError("a figure holds one or two runs")
        if self.quantity not in QUANTITIES:
            raise SchemaError(
                f"unknown quantity {self.quantity!r}; choose from {QUANTITIES}")


def render_heatmap(spec: PanelSpec) -> Path:
    """Side-by-side space-time maps, color scale normalized per figure."""
    runs = [load_run(d) for d in spec.run_dirs]
    fields = [run.quantity(spec.quantity) for run in runs]
    top = max(f.max() for f in fields)
    scale = top if top > 0 else 1.0

    fig, axes = plt.subplots(1, len(runs), figsize=(4.2 * len(runs), 3.6),
                             sharey=True, squeeze=False)
    for ax, run, data in zip(axes[0], runs, fields):
        mesh = ax.pcolormesh(run.z, run.times, data / scale,
                             cmap=spec.colormap, shading="auto",
                             vmin=0.0, vmax=1.0, rasterized=True)
        ax.set_xlabel("z  [L_p]")
        ax.set_title(run.label)
        if spec.z_range:
            ax.set_xlim(*spec.z_range)
        if spec.t_range:
            ax.set_ylim(*spec.t_range)
    axes[0][0].set_ylabel("t  [T_s]")
    fig.colorbar(mesh, ax=axes[0].tolist(),
                 label=f"{_QUANTITY_LABELS[spec.quantity]} (norm.)")
    out = Path(spec.out_path)
    fig.savefig(out, **_SAVE_OPTS)
    plt.close(fig)
    return out


def render_linecuts(run_dir, times: Sequence[float], quantity: str,
                    out_path) -> Path:
    """Overlaid profiles at the snapshots nearest the requested times."""
    if quantity not in QUANTITIES:
        raise SchemaError(
            f"unknown quantity {quantity!r}; choose from {QUANTITIES}")
    run = load_run(run_dir)
    lo, hi = run.times.min(), run.times.max()
    data = run.quantity(quantity)

    fig, ax = plt.subplots(figsize=(5.0, 3.4))
    for t_req in times:
        if not lo <= t_req <= hi:
            plt.close(fig)
            raise InputError(
                f"requested time {t_req} outside the covered range "
                f"[{lo}, {hi}]")
        idx = int(np.argmin(np.abs(run.times - t_req)))
        ax.plot(run.z, data[idx], label=f"t = {run.times[idx]:g} T_s")
    ax.set_xlabel("z  [L_p]")
    ax.set_ylabel(_QUANTITY_LABELS[quantity])
    ax.legend(fontsize=8)
    fig.tight_layout()
    out = Path(out_path)
    fig.savefig(out, **_SAVE_OPTS)
    plt.close(fig)
    return out


def render_sixpanel(run_a, run_b, out_path) -> Path:
    """3 x 2 layout: each derived quantity for two runs side by side."""
    runs = [load_run(run_a), load_run(run_b)]
    quantities = ("psi_plus_abs2", "psi_minus_abs2", "energy_density")
    fig, axes = plt.subplots(3, 2, figsize=(8.0, 9.0),
                             sharex=True, sharey=True)
    for i, quantity in enumerate(quantities):
        fields = [run.quantity(quantity) for run in runs]
        top = max(f.max() for f in fields)
        scale = top if top > 0 else 1.0
        for j, (run, data) in enumerate(zip(runs, fields)):
            ax = axes[i][j]
            ax.pcolormesh(run.z, run.times, data / scale, cmap="inferno",
                          shading="auto", vmin=0.0, vmax=1.0,
                          rasterized=True)
            if i == 0:
                ax.set_title(run.label)
            if i == 2:
                ax.set_xlabel("z  [L_p]")
            if j == 0:
                ax.set_ylabel(f"{_QUANTITY_LABELS[quantity]}\nt  [T_s]")
    fig.tight_layout()
    out = Path(out_path)
    fig.savefig(out, **_SAVE_OPTS)
    plt.close(fig)
    return out
