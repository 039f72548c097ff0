"""Closed-form polariton solutions for constant drive ratios.

For constant kappa ratios the coupled polariton transport equations are
solved exactly by two displaced copies of the stored pulse,

    psi_plus(z,t)  = (k+/2) [ (1 + beta/|k+|^2) P(z - beta r(t))
                            + (1 - beta/|k+|^2) P(z + beta r(t)) ] e^{-G_bc t}
    psi_minus(z,t) = (k-/2) [ P(z - beta r(t)) + P(z + beta r(t)) ] e^{-G_bc t}

with P the stored profile, r(t) the retardation and beta the splitting
factor.  For a perfect standing wave (beta = 0) both components reduce
to the stationary P(z)/sqrt(2) e^{-G_bc t}.  These expressions are the
oracle against which the numerical solvers are validated.

The module also evaluates the spatial-harmonic series of the Raman
coherence.  Writing the fast phase as chi = 2 k z, the coherence is

    sqrt(N) sigma_bc = -sin(theta) (psi+ + psi- e^{-i chi})
                                   / (k+ + k- e^{-i chi}),

whose expansion in powers of (-k-/k+) e^{-i chi} yields coefficients

    c_0 = -(sin(theta)/k+) psi+
    c_n = -(sin(theta)/k+) (-k-/k+)^{n-1} [ (-k-/k+) psi+ + psi- ],  n >= 1,

so consecutive harmonics shrink by |k-/k+|.  At a perfect standing wave
the pointwise division is singular at the coupling nodes; there the
coherence has a dc component only, which is evaluated directly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import ConfigError, UnsupportedOracleError
from .model import (
    CouplingSchedule,
    GridSpec,
    MediumParams,
    beta,
    mixing_angle_factors,
    retardation_r,
)


@dataclass(frozen=True)
class InitialPulse:
    """Stored pulse profile P(z) at the moment the drive switches on."""

    amplitude: complex = 1.0
    pulse_length: float = 1.0   # the length unit L_p
    center: float = 0.0
    shape: str = "gaussian"
    z_table: Optional[np.ndarray] = None
    values: Optional[np.ndarray] = None

    def __post_init__(self) -> None:
        if self.pulse_length <= 0:
            raise ConfigError("pulse_length must be > 0")
        if self.shape not in ("gaussian", "tabulated"):
            raise ConfigError(f"unknown pulse shape {self.shape!r}")
        if self.shape == "tabulated":
            if self.z_table is None or self.values is None:
                raise ConfigError("tabulated pulse needs z_table and values")
            z = np.asarray(self.z_table, dtype=float)
            v = np.asarray(self.values, dtype=complex)
            if z.ndim != 1 or z.size < 2 or np.any(np.diff(z) <= 0) or v.shape != z.shape:
                raise ConfigError("pulse tables must be increasing and of equal length")
            object.__setattr__(self, "z_table", z)
            object.__setattr__(self, "values", v)

    def eval(self, z: np.ndarray) -> np.ndarray:
        """Profile sampled at positions ``z`` (zero outside a table)."""
        z = np.asarray(z, dtype=float)
        if self.shape == "gaussian":
            u = (z - self.center) / self.pulse_length
            return self.amplitude * np.exp(-u * u)
        re = np.interp(z, self.z_table, self.values.real, left=0.0, right=0.0)
        im = np.interp(z, self.z_table, self.values.imag, left=0.0, right=0.0)
        return re + 1j * im


@dataclass
class PolaritonField:
    """Both polariton components sampled on a grid at one instant."""

    grid: GridSpec
    psi_plus: np.ndarray
    psi_minus: np.ndarray
    t: float = 0.0

    def __post_init__(self) -> None:
        self.psi_plus = np.asarray(self.psi_plus, dtype=complex)
        self.psi_minus = np.asarray(self.psi_minus, dtype=complex)
        for name, arr in (("psi_plus", self.psi_plus), ("psi_minus", self.psi_minus)):
            if arr.shape != (self.grid.n_z,):
                raise ConfigError(f"{name} must have {self.grid.n_z} samples")
            if not np.all(np.isfinite(arr.view(float))):
                raise ConfigError(f"{name} contains non-finite samples")

    def copy(self) -> "PolaritonField":
        return PolaritonField(self.grid, self.psi_plus.copy(), self.psi_minus.copy(), self.t)


def initial_polariton(pulse: InitialPulse, sched: CouplingSchedule,
                      grid: GridSpec) -> PolaritonField:
    """Polariton components at switch-on: psi± = kappa± P(z)."""
    if not grid.z_min <= pulse.center <= grid.z_max:
        raise ConfigError(
            f"pulse center {pulse.center} lies outside the grid "
            f"[{grid.z_min}, {grid.z_max}]"
        )
    prof = pulse.eval(grid.zgrid())
    return PolaritonField(grid, sched.kappa_plus * prof, sched.kappa_minus * prof, 0.0)


def evolve_closed_form(pulse: InitialPulse, sched: CouplingSchedule,
                       medium: MediumParams, grid: GridSpec,
                       t: float) -> PolaritonField:
    """Exact polariton field at time ``t`` for a constant-ratio drive."""
    if sched.has_time_dependent_kappa:
        raise UnsupportedOracleError(
            "no closed form exists for time-dependent kappa ratios"
        )
    if t < 0:
        raise ConfigError(f"t must be >= 0, got {t}")
    kp = complex(sched.kappa_plus)
    km = complex(sched.kappa_minus)
    a = abs(kp) ** 2
    b_split = beta(sched)
    shift = b_split * retardation_r(sched, t)
    z = grid.zgrid()
    p_right = pulse.eval(z - shift)   # component moving towards +z
    p_left = pulse.eval(z + shift)
    decay = np.exp(-medium.Gamma_bc * t)
    if shift == 0.0:
        # degenerate displacement: evaluate the kappa-scaled form directly
        # so the t = 0 field reproduces initial_polariton bit for bit
        psi_p = kp * p_right * decay
        psi_m = km * p_right * decay
    else:
        w = b_split / a
        psi_p = 0.5 * kp * ((1.0 + w) * p_right + (1.0 - w) * p_left) * decay
        psi_m = 0.5 * km * (p_right + p_left) * decay
    return PolaritonField(grid, psi_p, psi_m, t)


def raman_series(field: PolaritonField, sched: CouplingSchedule,
                 medium: MediumParams, n_terms: int) -> np.ndarray:
    """Harmonic coefficients c_n(z) of the scaled Raman coherence.

    ``c[n]`` multiplies exp(-2 i n k z), n = 0 .. n_terms-1.  The decay
    factor is already contained in the field samples.  For a standing
    wave only the dc coefficient is returned (higher entries zero).
    """
    if n_terms < 1:
        raise ConfigError(f"n_terms must be >= 1, got {n_terms}")
    kp = complex(sched.kappa_plus)
    km = complex(sched.kappa_minus)
    _, sin_th = mixing_angle_factors(sched, field.t)
    out = np.zeros((n_terms, field.grid.n_z), dtype=complex)
    if abs(abs(kp) - abs(km)) < 1e-12:
        # dc-only closed form; valid when psi± stay kappa±-proportional
        out[0] = -sin_th * (np.conj(kp) * field.psi_plus + np.conj(km) * field.psi_minus)
        return out
    ratio = -km / kp
    out[0] = -(sin_th / kp) * field.psi_plus
    if n_terms > 1:
        tail = -(sin_th / kp) * (ratio * field.psi_plus + field.psi_minus)
        for n in range(1, n_terms):
            out[n] = tail
            tail = tail * ratio
    return out


def raman_pointwise(field: PolaritonField, sched: CouplingSchedule,
                    medium: MediumParams, chi: np.ndarray) -> np.ndarray:
    """Scaled Raman coherence resolved over the fast phase chi = 2 k z.

    Returns an array of shape (n_z, len(chi)); used as the brute-force
    reference for :func:`raman_series`.  Undefined at coupling nodes of
    a perfect standing wave.
    """
    kp = complex(sched.kappa_plus)
    km = complex(sched.kappa_minus)
    _, sin_th = mixing_angle_factors(sched, field.t)
    phase = np.exp(-1j * np.asarray(chi, dtype=float))[None, :]
    num = field.psi_plus[:, None] + field.psi_minus[:, None] * phase
    den = kp + km * phase
    return -sin_th * num / den
