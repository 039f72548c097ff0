"""End-to-end acceptance checks, one test per criterion.

Each test prints a single PASS/FAIL line (visible with ``pytest -s`` or
in the failure output) and asserts the criterion at its stated
tolerance.
"""

import hashlib
import time
from pathlib import Path

import numpy as np
import pytest
from scipy.integrate import quad

from slpsim import (
    GridSpec,
    InitialPulse,
    MediumParams,
    RunConfig,
    ThermalParams,
    advance,
    beta,
    evolve_closed_form,
    init_solver,
    observables,
    parse_config,
    quasi_standing_schedule,
    retardation_r,
    run_full,
    run_scenario,
    run_thermal,
    schedule_eval,
    standing_wave_schedule,
)
from slpsim.analytic import raman_pointwise

GRID_1024 = GridSpec(n_z=1024, z_min=-10.0, z_max=10.0, cfl=0.5)


def report(num: int, ok: bool, detail: str) -> None:
    print(f"ACCEPTANCE {num}: {'PASS' if ok else 'FAIL'} - {detail}")


def linf(state, pulse, medium):
    oracle = evolve_closed_form(pulse, state.sched, medium,
                                state.field.grid, state.t)
    return max(np.abs(state.field.psi_plus - oracle.psi_plus).max(),
               np.abs(state.field.psi_minus - oracle.psi_minus).max())


def test_criterion_1_standing_wave_stationarity(medium, pulse):
    t0 = time.perf_counter()
    sched = standing_wave_schedule()
    state0 = init_solver(pulse, sched, medium, GRID_1024)
    state = advance(state0, 10.0)
    dev = max(np.abs(state.field.psi_plus - state0.field.psi_plus).max(),
              np.abs(state.field.psi_minus - state0.field.psi_minus).max())
    elapsed = time.perf_counter() - t0
    ok = dev <= 1e-10 and elapsed < 5.0
    report(1, ok, f"max deviation {dev:.3e} (<=1e-10), runtime {elapsed:.2f}s (<5s)")
    assert dev <= 1e-10
    assert elapsed < 5.0


def test_criterion_2_oracle_equivalence(medium, pulse):
    t0 = time.perf_counter()
    sched = quasi_standing_schedule(0.55)
    errs = {}
    for n_z in (256, 512, 1024):
        grid = GridSpec(n_z=n_z, z_min=-10.0, z_max=10.0, cfl=0.5)
        state = advance(init_solver(pulse, sched, medium, grid), 10.0)
        errs[n_z] = linf(state, pulse, medium)
    r1 = errs[256] / errs[512]
    r2 = errs[512] / errs[1024]
    elapsed = time.perf_counter() - t0
    ok = errs[1024] <= 1e-3 and r1 >= 3.5 and r2 >= 3.5 and elapsed < 10.0
    report(2, ok, f"Linf(1024) {errs[1024]:.2e} (<=1e-3), refinement ratios "
                  f"{r1:.1f}, {r2:.1f} (>=3.5), runtime {elapsed:.2f}s (<10s)")
    assert errs[1024] <= 1e-3
    assert r1 >= 3.5 and r2 >= 3.5
    assert elapsed < 10.0


def test_criterion_3_split_velocities(medium, pulse):
    sched = quasi_standing_schedule(0.55)
    state = init_solver(pulse, sched, medium, GRID_1024)
    ts, z_plus, z_minus = [], [], []
    for t in np.arange(6.0, 10.01, 0.5):
        state = advance(state, t)
        peaks = sorted(pk[0] for pk in observables(state).peak_positions)
        ts.append(t)
        z_minus.append(peaks[0])
        z_plus.append(peaks[-1])
    v_plus = np.polyfit(ts, z_plus, 1)[0]
    v_minus = np.polyfit(ts, z_minus, 1)[0]
    err_p = abs(v_plus / 0.2345 - 1.0)
    err_m = abs(-v_minus / 0.2345 - 1.0)
    ok = err_p <= 0.01 and err_m <= 0.01
    report(3, ok, f"fitted speeds {v_plus:+.5f}/{v_minus:+.5f} v_g0 vs "
                  f"+-0.2345 (errors {err_p:.2%}, {err_m:.2%}, tol 1%)")
    assert err_p <= 0.01
    assert err_m <= 0.01


def test_criterion_4_late_time_norm_ratio(medium, pulse):
    sched = quasi_standing_schedule(0.55)
    state0 = init_solver(pulse, sched, medium, GRID_1024)
    t = 5.0 / beta(sched) + np.log(2.0)       # separation beta*r >= 5 L_p
    state = advance(state0, t)
    sep = beta(sched) * retardation_r(sched, state.t)
    ratio = observables(state).norm / observables(state0).norm
    ok = sep >= 5.0 and abs(ratio / 0.550 - 1.0) <= 0.01
    report(4, ok, f"separation {sep:.2f} L_p, norm ratio {ratio:.4f} "
                  f"vs 0.550 (tol 1%)")
    assert sep >= 5.0
    assert ratio == pytest.approx(0.550, rel=0.01)


def test_criterion_5_raman_harmonic_geometry(medium, pulse):
    # brute-force spatial Fourier projection over one wavelength of the
    # fast phase, ratios of consecutive series harmonics
    sched = quasi_standing_schedule(0.55)
    fld = evolve_closed_form(pulse, sched, medium, GRID_1024, 4.0)
    j = np.argmin(np.abs(GRID_1024.zgrid()
                         - beta(sched) * retardation_r(sched, 4.0)))
    chi = 2.0 * np.pi * np.arange(4096) / 4096
    fast = raman_pointwise(fld, sched, medium, chi)[j]
    coeffs = [np.mean(fast * np.exp(1j * n * chi)) for n in range(5)]
    ratios = [abs(coeffs[n + 1] / coeffs[n]) for n in (1, 2, 3)]
    errs = [abs(r / 0.9045 - 1.0) for r in ratios]
    ok = all(e <= 0.02 for e in errs)
    report(5, ok, "ratios " + ", ".join(f"{r:.4f}" for r in ratios)
           + " vs 0.9045 (tol 2%)")
    assert all(e <= 0.02 for e in errs)


def test_criterion_6_full_model_validation(pulse):
    # NOTE: this criterion is not attainable with the prescribed
    # parameters.  The harmonic-truncated tier carries two real effects
    # the transport tier omits by construction: finite-bandwidth
    # absorption (amplitude diffusion ~ l_a v_g, independently verified
    # against the closed-form loss 1/sqrt(1 + 4 l_a r) in the test
    # suite) and, at an exact standing wave, a truncation-induced
    # splitting at speed ~ v_g/sqrt(2M) that decays too slowly with M
    # to suppress (zero-closure of the harmonic ladder at |k-/k+| = 1).
    # The measured mismatch is dt-, grid- and M-converged; it is a
    # property of the model pairing, not of the integrators.  The test
    # asserts the criterion as stated and is expected to fail.
    t0 = time.perf_counter()
    grid = GridSpec(n_z=512, z_min=-10.0, z_max=10.0, cfl=0.5)
    sched = standing_wave_schedule()

    def mismatch(gamma_ba_ts: float) -> float:
        medium = MediumParams(gamma_ba=gamma_ba_ts, gamma_bc=0.0, l_a=0.1)
        snaps = run_full(pulse, sched, medium, grid, M=8, t_end=5.0,
                         snapshot_every=0.25)
        state = init_solver(pulse, sched, medium, grid)
        num = den = 0.0
        for snap in snaps:
            state = advance(state, snap.t)
            cos2, _, _ = schedule_eval(sched, snap.t)
            i_ad = cos2 * (np.abs(state.field.psi_plus) ** 2
                           + np.abs(state.field.psi_minus) ** 2)
            i_full = np.abs(snap.e_plus) ** 2 + np.abs(snap.e_minus) ** 2
            num += np.sum((i_full - i_ad) ** 2)
            den += np.sum(i_ad ** 2)
        return float(np.sqrt(num / den))

    mm = {g: mismatch(g) for g in (10.0, 30.0, 100.0)}
    elapsed = time.perf_counter() - t0
    within = mm[100.0] <= 0.05
    monotone = mm[10.0] > mm[30.0] > mm[100.0]
    ok = within and monotone and elapsed < 180.0
    report(6, ok, f"rel L2 mismatch at gamma_ba*T_s=100: {mm[100.0]:.3f} "
                  f"(tol 0.05); sweep {mm[10.0]:.4f}, {mm[30.0]:.4f}, "
                  f"{mm[100.0]:.4f} (monotone decrease: {monotone}); "
                  f"runtime {elapsed:.0f}s (<180s)")
    assert elapsed < 180.0
    assert within, (
        f"relative L2 mismatch {mm[100.0]:.3f} exceeds 0.05; converged in "
        f"dt, grid and M, dominated by finite-bandwidth absorption "
        f"(~l_a v_g) plus truncation-induced splitting (~v_g/sqrt(2M)) "
        f"that the transport tier omits by construction")
    assert monotone, f"mismatch sweep not monotone: {mm}"


def test_criterion_7_thermal_contrast(medium, pulse):
    sched = quasi_standing_schedule(0.55)
    t_end = 3.0 / beta(sched) + np.log(2.0)   # beta r >= 3 L_p at the end
    snaps = run_thermal(pulse, sched, medium, GRID_1024, ThermalParams(),
                        t_end=t_end, snapshot_every=0.5)
    z = GRID_1024.zgrid()

    def centroid(psi):
        w = np.abs(psi) ** 2
        return np.trapezoid(z * w, z) / np.trapezoid(w, z)

    late = [(s.t, centroid(s.psi)) for s in snaps if s.t >= 0.6 * t_end]
    ts = np.array([t for t, _ in late])
    cs = np.array([c for _, c in late])
    slope = np.polyfit(ts, cs, 1)[0]
    drift_err = abs(slope / 0.100 - 1.0)

    rho = np.abs(snaps[-1].psi) ** 2
    thresh = 0.1 * rho.max()
    thermal_peaks = np.flatnonzero(
        (rho[1:-1] > rho[:-2]) & (rho[1:-1] >= rho[2:])
        & (rho[1:-1] >= thresh)) + 1
    cold = advance(init_solver(pulse, sched, medium, GRID_1024), t_end)
    cold_peaks = observables(cold).peak_positions
    ok = drift_err <= 0.02 and len(thermal_peaks) == 1 and len(cold_peaks) == 2
    report(7, ok, f"thermal drift {slope:.4f} v_g0 vs 0.100 "
                  f"(err {drift_err:.2%}, tol 2%); peak count thermal/cold = "
                  f"{len(thermal_peaks)}/{len(cold_peaks)} (expect 1/2)")
    assert drift_err <= 0.02
    assert len(thermal_peaks) == 1
    assert len(cold_peaks) == 2


def test_criterion_8_retardation_closed_form():
    sched = standing_wave_schedule()
    worst = 0.0
    for t in np.linspace(0.25, 20.0, 80):
        ref, _ = quad(lambda s: np.tanh(s), 0.0, float(t),
                      epsabs=1e-13, epsrel=1e-13)
        worst = max(worst, abs(retardation_r(sched, float(t)) - ref)
                    / max(abs(ref), 1e-300))
    ok = worst <= 1e-8
    report(8, ok, f"max relative quadrature deviation {worst:.2e} (<=1e-8)")
    assert worst <= 1e-8


def test_criterion_9_determinism_and_round_trip(tmp_path):
    cfg = RunConfig(model="adiabatic", kappa_plus_sq=0.55, t_end=2.0,
                    snapshot_every=0.5,
                    grid=GridSpec(n_z=256, z_min=-10.0, z_max=10.0))
    run_scenario(cfg, out_dir=tmp_path / "a")
    run_scenario(cfg, out_dir=tmp_path / "b")

    def digest(d: Path) -> dict:
        return {p.name: hashlib.sha256(p.read_bytes()).hexdigest()
                for p in sorted(d.iterdir()) if p.name != "run.log"}

    identical = digest(tmp_path / "a") == digest(tmp_path / "b")
    round_trips = all(parse_config(c.to_json()) == c for c in (
        cfg, RunConfig(), RunConfig(model="thermal", d_coef=1.3)))
    ok = identical and round_trips
    report(9, ok, f"byte-identical outputs: {identical}; "
                  f"config round-trip: {round_trips}")
    assert identical
    assert round_trips
