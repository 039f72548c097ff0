"""Exception hierarchy shared by all solver tiers.

The scenario CLI maps these onto process exit codes: configuration
problems exit with 2, numerical failures with 3 and I/O trouble with 4.
"""


class SlpsimError(Exception):
    """Base class for all package errors."""


class ConfigError(SlpsimError):
    """Invalid configuration, parameter out of range, or malformed input."""


class NumericError(SlpsimError):
    """Numerical blow-up (NaN/Inf) detected during time stepping."""


class UnsupportedOracleError(SlpsimError):
    """Closed-form evaluation requested for a drive it does not cover."""


class ComparisonError(SlpsimError):
    """Run directories are not comparable (grid or snapshot mismatch)."""
