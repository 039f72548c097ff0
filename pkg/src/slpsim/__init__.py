"""Slow-light pulse storage, retrieval and stationary-light simulator.

Three model tiers over a shared parameter core:

* :mod:`slpsim.analytic` evaluates the exact split-pulse solution for
  constant drive ratios (the oracle),
* :mod:`slpsim.adiabatic` integrates the coupled polariton transport
  equations for arbitrary drive envelopes,
* :mod:`slpsim.fullmodel` integrates the underlying Maxwell-Bloch
  system with spatial harmonic truncation,
* :mod:`slpsim.thermal` provides a drift-diffusion contrast model for
  moving atoms.

:mod:`slpsim.scenario` orchestrates runs and owns the CSV/manifest
formats; ``slpsim`` on the command line dispatches to it.
"""

__version__ = "0.1.0"

from .analytic import (
    InitialPulse,
    PolaritonField,
    evolve_closed_form,
    initial_polariton,
    raman_series,
)
from .adiabatic import (
    AdiabaticState,
    Observables,
    advance,
    init_solver,
    observables,
    reconstruct_fields,
)
from .errors import (
    ComparisonError,
    ConfigError,
    NumericError,
    SlpsimError,
    UnsupportedOracleError,
)
from .fullmodel import (
    AtomicState,
    FieldPair,
    FullSnapshot,
    init_full,
    propagate_fields,
    run_full,
    step_atoms,
)
from .model import (
    CouplingSchedule,
    GridSpec,
    MediumParams,
    beta,
    kappa_from_rabi,
    quasi_standing_schedule,
    retardation_r,
    schedule_eval,
    speed_of_light,
    standing_wave_schedule,
)
from .scenario import RunConfig, RunManifest, compare_runs, parse_config, run_scenario
from .thermal import ThermalParams, ThermalSnapshot, run_thermal

__all__ = [
    "__version__",
    "AdiabaticState", "AtomicState", "ComparisonError", "ConfigError",
    "CouplingSchedule", "FieldPair", "FullSnapshot", "GridSpec",
    "InitialPulse", "MediumParams", "NumericError", "Observables",
    "PolaritonField", "RunConfig", "RunManifest", "SlpsimError",
    "ThermalParams", "ThermalSnapshot", "UnsupportedOracleError",
    "advance", "beta", "compare_runs", "evolve_closed_form", "init_full",
    "init_solver", "initial_polariton", "kappa_from_rabi", "observables",
    "parse_config", "propagate_fields", "quasi_standing_schedule",
    "raman_series", "reconstruct_fields", "retardation_r", "run_full",
    "run_scenario", "run_thermal", "schedule_eval", "speed_of_light",
    "standing_wave_schedule", "step_atoms",
]
