"""Medium parameters, coupling-field schedules and derived scalars.

Unit conventions used throughout the package:

* time is measured in units of the switching time ``T_s``,
* length in units of the stored pulse length ``L_p``,
* velocity in units of ``v_g0``, the group velocity at full coupling
  power, so ``v_g0 = L_p / T_s = 1`` in code units.

With these choices the slow-light tier never needs the vacuum speed of
light explicitly.  The non-adiabatic tier does need it; there
``c = v_g0 / cos2_theta0`` (see :func:`speed_of_light`).

All types are immutable after construction and safe to share between
concurrently running solvers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import ConfigError

#: |kappa_plus|^2 + |kappa_minus|^2 must hold to this tolerance.
NORMALIZATION_TOL = 1e-12


@dataclass(frozen=True)
class MediumParams:
    """Static constants of the atomic medium.

    Rates are in units of 1/T_s, lengths in units of L_p.  The
    probe-transition coupling density g^2 N is not stored directly; it
    is fixed by the resonant absorption length through
    ``g^2 N = gamma_ba * c / l_a`` and exposed via
    :meth:`coupling_strength_sq`.
    """

    gamma_ba: float = 100.0   # optical coherence decay rate
    gamma_bc: float = 0.0     # ground-state (Raman) dephasing rate
    delta_p: float = 0.0      # one-photon probe detuning
    delta_2ph: float = 0.0    # two-photon detuning
    l_a: float = 0.1          # resonant absorption length without EIT
    L: float = 20.0           # medium length

    def __post_init__(self) -> None:
        if self.gamma_ba <= 0:
            raise ConfigError(f"gamma_ba must be > 0, got {self.gamma_ba}")
        if self.gamma_bc < 0:
            raise ConfigError(f"gamma_bc must be >= 0, got {self.gamma_bc}")
        if self.l_a <= 0:
            raise ConfigError(f"l_a must be > 0, got {self.l_a}")
        if self.L <= 0:
            raise ConfigError(f"L must be > 0, got {self.L}")

    @property
    def Gamma_ba(self) -> complex:
        """Complex decay rate of the optical coherence."""
        return self.gamma_ba - 1j * self.delta_p

    @property
    def Gamma_bc(self) -> complex:
        """Complex decay rate of the Raman coherence."""
        return self.gamma_bc - 1j * self.delta_2ph

    def coupling_strength_sq(self, c: float) -> float:
        """g^2 N for a given speed of light ``c`` (code units)."""
        return self.gamma_ba * c / self.l_a


@dataclass(frozen=True)
class GridSpec:
    """Uniform spatial grid for all solvers."""

    n_z: int = 1024
    z_min: float = -10.0
    z_max: float = 10.0
    cfl: float = 0.5

    def __post_init__(self) -> None:
        if self.n_z < 8:
            raise ConfigError(f"n_z must be >= 8, got {self.n_z}")
        if not self.z_max > self.z_min:
            raise ConfigError("z_max must exceed z_min")
        if not 0.0 < self.cfl <= 1.0:
            raise ConfigError(f"cfl must be in (0, 1], got {self.cfl}")

    @property
    def dz(self) -> float:
        return (self.z_max - self.z_min) / (self.n_z - 1)

    def zgrid(self) -> np.ndarray:
        return np.linspace(self.z_min, self.z_max, self.n_z)


@dataclass(frozen=True)
class CouplingSchedule:
    """Time-dependent coupling drive.

    The drive is characterised by the constant amplitude ratios
    ``kappa_plus``/``kappa_minus`` of the forward and backward coupling
    components and by the mixing-angle envelope cos^2(theta)(t).  Three
    envelope kinds are supported:

    * ``"tanh"``:  cos^2(theta)(t) = cos2_theta0 * tanh(t / T_s),
      the switch-on used for retrieval runs (t >= 0 only),
    * ``"constant"``:  cos^2(theta) = cos2_theta0 for all t,
    * ``"tabulated"``:  linear interpolation of user tables; the tables
      may also carry time-dependent kappa ratios, which no closed form
      covers.

    By convention |kappa_plus| >= |kappa_minus|; the mirror-image drive
    is represented by relabelling the propagation directions.
    """

    kappa_plus: complex = 1.0 / np.sqrt(2.0)
    kappa_minus: complex = 1.0 / np.sqrt(2.0)
    cos2_theta0: float = 0.01
    T_s: float = 1.0
    kind: str = "tanh"
    # tabulated kind only
    t_table: Optional[np.ndarray] = None
    cos2_table: Optional[np.ndarray] = None
    kappa_plus_table: Optional[np.ndarray] = None
    kappa_minus_table: Optional[np.ndarray] = None

    def __post_init__(self) -> None:
        norm = abs(self.kappa_plus) ** 2 + abs(self.kappa_minus) ** 2
        if abs(norm - 1.0) > NORMALIZATION_TOL:
            raise ConfigError(
                f"|kappa+|^2 + |kappa-|^2 = {norm!r} is not 1 within {NORMALIZATION_TOL}"
            )
        if abs(self.kappa_plus) < abs(self.kappa_minus):
            raise ConfigError(
                "convention requires |kappa+| >= |kappa-|; swap the labels"
            )
        if not 0.0 < self.cos2_theta0 < 0.5:
            raise ConfigError(
                f"cos2_theta0 must lie in (0, 0.5) (low group velocity), got {self.cos2_theta0}"
            )
        if self.T_s <= 0:
            raise ConfigError("T_s must be > 0")
        if self.kind not in ("tanh", "constant", "tabulated"):
            raise ConfigError(f"unknown schedule kind {self.kind!r}")
        if self.kind == "tabulated":
            if self.t_table is None or self.cos2_table is None:
                raise ConfigError("tabulated schedule needs t_table and cos2_table")
            t = np.asarray(self.t_table, dtype=float)
            if t.ndim != 1 or t.size < 2 or np.any(np.diff(t) <= 0):
                raise ConfigError("t_table must be strictly increasing with >= 2 points")
            object.__setattr__(self, "t_table", t)
            object.__setattr__(self, "cos2_table", np.asarray(self.cos2_table, dtype=float))
            if self.cos2_table.shape != t.shape:
                raise ConfigError("cos2_table must match t_table in shape")
            for name in ("kappa_plus_table", "kappa_minus_table"):
                tab = getattr(self, name)
                if tab is not None:
                    tab = np.asarray(tab, dtype=complex)
                    if tab.shape != t.shape:
                        raise ConfigError(f"{name} must match t_table in shape")
                    object.__setattr__(self, name, tab)

    @property
    def has_time_dependent_kappa(self) -> bool:
        return self.kappa_plus_table is not None or self.kappa_minus_table is not None

    @property
    def phi(self) -> float:
        """Phase angle of kappa+ * conj(kappa-); 0 when either vanishes."""
        prod = self.kappa_plus * np.conj(self.kappa_minus)
        if prod == 0:
            return 0.0
        return float(np.angle(prod))

    def kappas_at(self, t: float) -> tuple[complex, complex]:
        """Instantaneous (kappa+, kappa-), honouring tabulated ratios."""
        if not self.has_time_dependent_kappa:
            return complex(self.kappa_plus), complex(self.kappa_minus)
        kp = _interp_complex(t, self.t_table, self.kappa_plus_table, self.kappa_plus)
        km = _interp_complex(t, self.t_table, self.kappa_minus_table, self.kappa_minus)
        norm = np.hypot(abs(kp), abs(km))
        if norm == 0:
            raise ConfigError(f"tabulated kappa ratios vanish at t={t}")
        return kp / norm, km / norm


def _interp_complex(t, t_table, table, fallback) -> complex:
    if table is None:
        return complex(fallback)
    re = np.interp(t, t_table, table.real)
    im = np.interp(t, t_table, table.imag)
    return complex(re, im)


def standing_wave_schedule(cos2_theta0: float = 0.01, T_s: float = 1.0,
                           kind: str = "tanh") -> CouplingSchedule:
    """Symmetric drive, kappa+ = kappa- = 1/sqrt(2)."""
    k = 1.0 / np.sqrt(2.0)
    return CouplingSchedule(k, k, cos2_theta0, T_s, kind)


def quasi_standing_schedule(kappa_plus_sq: float, phi: float = 0.0,
                            cos2_theta0: float = 0.01, T_s: float = 1.0,
                            kind: str = "tanh") -> CouplingSchedule:
    """Drive with |kappa+|^2 = kappa_plus_sq and relative phase ``phi``."""
    if not 0.5 <= kappa_plus_sq <= 1.0:
        raise ConfigError(
            f"kappa_plus_sq must lie in [0.5, 1], got {kappa_plus_sq}"
        )
    kp = np.sqrt(kappa_plus_sq)
    km = np.sqrt(1.0 - kappa_plus_sq) * np.exp(-1j * phi)
    return CouplingSchedule(kp, km, cos2_theta0, T_s, kind)


def schedule_eval(sched: CouplingSchedule, t: float) -> tuple[float, float, float]:
    """Evaluate the drive envelope at time ``t``.

    Returns ``(cos2_theta, sin2_theta, v_g)`` with the group velocity in
    units of ``v_g0 = c * cos2_theta0``, i.e. ``v_g = cos2_theta /
    cos2_theta0``.
    """
    if sched.kind == "tanh":
        if t < 0:
            raise ConfigError(f"tanh switch-on is defined for t >= 0, got t={t}")
        cos2 = sched.cos2_theta0 * np.tanh(t / sched.T_s)
    elif sched.kind == "constant":
        cos2 = sched.cos2_theta0
    else:
        cos2 = float(np.interp(t, sched.t_table, sched.cos2_table))
    return cos2, 1.0 - cos2, cos2 / sched.cos2_theta0


def beta(sched: CouplingSchedule, t: float | None = None) -> float:
    """Splitting factor sqrt(|k+|^2 (|k+|^2 - |k-|^2)) of the drive.

    This is the dimensionless speed (in units of v_g) at which the two
    retrieved pulse components separate.  It is 0 for a perfect standing
    wave and 1 for a traveling wave.
    """
    if t is None:
        kp, km = complex(sched.kappa_plus), complex(sched.kappa_minus)
    else:
        kp, km = sched.kappas_at(t)
    a = abs(kp) ** 2
    b = abs(km) ** 2
    return float(np.sqrt(max(a * (a - b), 0.0)))


def retardation_r(sched: CouplingSchedule, t: float) -> float:
    """Accumulated slow-light path r(t) = integral of c cos^2(theta) dt'.

    Returned in units of L_p (= v_g0 T_s).  For the tanh switch-on the
    closed form is ``v_g0 T_s ln cosh(t / T_s)``.
    """
    if t < 0:
        raise ConfigError(f"retardation is defined for t >= 0, got t={t}")
    if sched.kind == "tanh":
        # log(cosh(x)) = x + log1p(exp(-2x)) - log(2), overflow-safe
        x = t / sched.T_s
        return sched.T_s * (x + np.log1p(np.exp(-2.0 * x)) - np.log(2.0))
    if sched.kind == "constant":
        return t
    return _integrate_table(sched, t) / sched.cos2_theta0


def _integrate_table(sched: CouplingSchedule, t: float) -> float:
    """Exact integral of the piecewise-linear cos2 table from 0 to t."""
    tt = sched.t_table
    yy = sched.cos2_table
    # extend with clamped end values so integration is defined everywhere
    knots = np.concatenate(([min(0.0, tt[0] - 1.0)], tt, [max(t, tt[-1]) + 1.0]))
    vals = np.concatenate(([yy[0]], yy, [yy[-1]]))
    total = 0.0
    for k in range(len(knots) - 1):
        lo, hi = knots[k], knots[k + 1]
        a = max(lo, 0.0)
        b = min(hi, t)
        if b <= a:
            continue
        ya = np.interp(a, knots, vals)
        yb = np.interp(b, knots, vals)
        total += 0.5 * (ya + yb) * (b - a)
    return float(total)


def kappa_from_rabi(omega_plus: complex, omega_minus: complex) -> dict:
    """Normalise a pair of coupling Rabi amplitudes.

    Returns ``kappa_plus``, ``kappa_minus``, the total Rabi frequency
    ``omega_total = sqrt(|O+|^2 + |O-|^2)`` and the phase angle ``phi``
    defined by kappa+ conj(kappa-) = |kappa+||kappa-| e^{i phi}, reported
    as 0 when either component vanishes.
    """
    op = complex(omega_plus)
    om = complex(omega_minus)
    total = np.hypot(abs(op), abs(om))
    if total == 0:
        raise ConfigError("degenerate drive: both Rabi amplitudes are zero")
    kp = op / total
    km = om / total
    prod = kp * np.conj(km)
    phi = float(np.angle(prod)) if prod != 0 else 0.0
    return {
        "kappa_plus": kp,
        "kappa_minus": km,
        "omega_total": float(total),
        "phi": phi,
    }


def speed_of_light(sched: CouplingSchedule) -> float:
    """Vacuum speed of light in code units (v_g0 = 1)."""
    return 1.0 / sched.cos2_theta0


def mixing_angle_factors(sched: CouplingSchedule, t: float) -> tuple[float, float]:
    """(cos(theta), sin(theta)) of the dark-state mixing angle at ``t``."""
    cos2, sin2, _ = schedule_eval(sched, t)
    return float(np.sqrt(cos2)), float(np.sqrt(sin2))


def total_rabi(sched: CouplingSchedule, medium: MediumParams, t: float) -> float:
    """Total coupling Rabi frequency Omega(t) = g sqrt(N) cot(theta)."""
    cos2, sin2, _ = schedule_eval(sched, t)
    g_sqrt_n = np.sqrt(medium.coupling_strength_sq(speed_of_light(sched)))
    return float(g_sqrt_n * np.sqrt(cos2 / sin2))
