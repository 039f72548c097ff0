"""Phenomenological drift-diffusion reference for a thermal-gas medium.

Atomic motion washes out the fast spatial harmonics of the Raman
coherence, so in a warm gas a quasi-standing drive does not split the
retrieved pulse; instead the whole pulse drifts at

    v_dr(t) = (|k+|^2 - |k-|^2) v_g(t)

and broadens diffusively.  This module integrates

    dt psi = -v_dr(t) dz psi + D(t) dz^2 psi - G_bc psi,
    D(t) = d_coef * l_a * v_g(t),

with the stored pulse as initial data.  The diffusion magnitude is a
modelling knob (default d_coef = 4 |k+|^2 |k-|^2, vanishing for a
traveling wave); only the qualitative contrast with the motionless-atom
tier is meaningful.  Default scheme is Crank-Nicolson (unconditionally
stable) with zero-gradient boundaries; an explicit variant is kept for
cross-checks and requires D dt / dz^2 <= 0.4.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.linalg import solve_banded

from .analytic import InitialPulse
from .errors import ConfigError, NumericError
from .model import CouplingSchedule, GridSpec, MediumParams, schedule_eval


@dataclass(frozen=True)
class ThermalParams:
    """Drift and diffusion coefficients of the reference model."""

    d_coef: Optional[float] = None   # None: use 4 |k+|^2 |k-|^2

    def resolve_d_coef(self, sched: CouplingSchedule) -> float:
        if self.d_coef is None:
            a = abs(sched.kappa_plus) ** 2
            return 4.0 * a * (1.0 - a)
        if self.d_coef < 0:
            raise ConfigError(f"diffusion coefficient must be >= 0, got {self.d_coef}")
        return float(self.d_coef)

    def drift(self, sched: CouplingSchedule, t: float) -> float:
        a = abs(sched.kappa_plus) ** 2
        b = abs(sched.kappa_minus) ** 2
        _, _, v_g = schedule_eval(sched, t)
        return (a - b) * v_g

    def diffusion(self, sched: CouplingSchedule, medium: MediumParams,
                  t: float) -> float:
        _, _, v_g = schedule_eval(sched, t)
        return self.resolve_d_coef(sched) * medium.l_a * v_g


@dataclass
class ThermalSnapshot:
    t: float
    psi: np.ndarray


def run_thermal(pulse: InitialPulse, sched: CouplingSchedule,
                medium: MediumParams, grid: GridSpec,
                thermal: ThermalParams, t_end: float,
                snapshot_every: float = 0.25, dt: Optional[float] = None,
                scheme: str = "implicit") -> list[ThermalSnapshot]:
    """Integrate the drift-diffusion model and emit periodic snapshots."""
    if scheme not in ("implicit", "explicit"):
        raise ConfigError(f"unknown thermal scheme {scheme!r}")
    if t_end <= 0 or snapshot_every <= 0:
        raise ConfigError("t_end and snapshot_every must be > 0")
    thermal.resolve_d_coef(sched)  # validates sign

    dz = grid.dz
    z = grid.zgrid()
    if dt is None:
        d_max = max(thermal.diffusion(sched, medium, t)
                    for t in np.linspace(0, t_end, 65))
        v_max = max(abs(thermal.drift(sched, t))
                    for t in np.linspace(0, t_end, 65))
        dt = grid.cfl * dz / max(v_max, 2.0 * d_max / dz, 1e-12)
        if scheme == "explicit":
            dt = min(dt, 0.4 * dz * dz / max(d_max, 1e-300))
    steps_per_snap = max(1, int(np.ceil(snapshot_every / dt - 1e-12)))
    dt_eff = snapshot_every / steps_per_snap
    n_snaps = int(np.floor(t_end / snapshot_every + 1e-9))

    psi = pulse.eval(z).astype(complex)
    snaps = [ThermalSnapshot(0.0, psi.copy())]
    t = 0.0
    for i_snap in range(1, n_snaps + 1):
        for k in range(steps_per_snap):
            t_mid = t + 0.5 * dt_eff
            v = thermal.drift(sched, t_mid)
            d = thermal.diffusion(sched, medium, t_mid)
            if scheme == "explicit":
                if d * dt_eff / dz ** 2 > 0.4:
                    raise ConfigError(
                        "explicit thermal scheme violates D dt/dz^2 <= 0.4"
                    )
                psi = psi + dt_eff * _apply_l(psi, v, d, dz)
            else:
                psi = _crank_nicolson_step(psi, v, d, dz, dt_eff)
            psi *= np.exp(-medium.Gamma_bc * dt_eff)
            t = (i_snap - 1 + (k + 1) / steps_per_snap) * snapshot_every
        if not np.all(np.isfinite(psi.view(float))):
            raise NumericError(f"thermal solver blew up at t={t}")
        snaps.append(ThermalSnapshot(t, psi.copy()))
    return snaps


def _apply_l(psi: np.ndarray, v: float, d: float, dz: float) -> np.ndarray:
    """Centered -v dz + D dz^2 with reflected (zero-gradient) ghosts."""
    out = np.empty_like(psi)
    out[1:-1] = (d * (psi[2:] - 2.0 * psi[1:-1] + psi[:-2]) / dz ** 2
                 - v * (psi[2:] - psi[:-2]) / (2.0 * dz))
    out[0] = 2.0 * d * (psi[1] - psi[0]) / dz ** 2
    out[-1] = 2.0 * d * (psi[-2] - psi[-1]) / dz ** 2
    return out


def _crank_nicolson_step(psi: np.ndarray, v: float, d: float,
                         dz: float, dt: float) -> np.ndarray:
    n = psi.shape[0]
    alpha = d * dt / (2.0 * dz ** 2)
    gamma = v * dt / (4.0 * dz)
    rhs = psi.copy()
    rhs[1:-1] += (alpha + gamma) * psi[:-2] - 2.0 * alpha * psi[1:-1] \
        + (alpha - gamma) * psi[2:]
    rhs[0] += 2.0 * alpha * (psi[1] - psi[0])
    rhs[-1] += 2.0 * alpha * (psi[-2] - psi[-1])
    ab = np.zeros((3, n), dtype=complex)
    ab[0, 1:] = -(alpha - gamma)
    ab[0, 1] = -2.0 * alpha          # row 0 ghost folds psi[-1] onto psi[1]
    ab[1, :] = 1.0 + 2.0 * alpha
    ab[2, :-1] = -(alpha + gamma)
    ab[2, n - 2] = -2.0 * alpha      # last row ghost folds psi[n] onto psi[n-2]
    return solve_banded((1, 1), ab, rhs)
