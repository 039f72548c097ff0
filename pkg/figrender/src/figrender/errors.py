class FigrenderError(Exception):
    """Base class for renderer errors."""


class InputError(FigrenderError):
    """Run directory unusable (missing manifest, too few snapshots,
    requested time outside the covered range)."""


class SchemaError(FigrenderError):
    """Snapshot CSV does not match the expected schema."""
