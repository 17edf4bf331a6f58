"""Exception types shared across the engine.

The CLI maps these onto exit codes: input problems exit 1, an empty
analysis universe exits 2, and anything else exits 3.
"""


class DataError(ValueError):
    """Malformed or inconsistent input data (bad row, duplicate key, ...)."""


class CoverageError(DataError):
    """An event window cannot be anchored or falls below minimum coverage."""


class ConfigError(ValueError):
    """Run configuration violates the documented schema."""


class NoSamplesError(RuntimeError):
    """No split event in the calendar produced an analyzable sample."""
