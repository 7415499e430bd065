"""Exception hierarchy shared by all soiltherm modules.

The CLI maps these onto its exit-code contract: configuration problems
exit 2, input-data problems exit 3, solver failures exit 4.
"""


class SoilthermError(Exception):
    """Base class for all toolkit errors."""


class UnitDomainError(SoilthermError, ValueError):
    """A physical quantity is outside its admissible domain.

    Raised for non-finite values, temperatures at or below absolute zero,
    negative pressures, non-positive grain sizes, and similar violations.
    """


class ConfigError(SoilthermError):
    """Configuration is missing, malformed, or internally inconsistent."""


class SampleValidationError(ConfigError):
    """A soil sample violates one or more invariants.

    ``violations`` is a list of ``(field_path, message)`` pairs, one per
    violated invariant.
    """

    def __init__(self, name, violations):
        self.sample_name = name
        self.violations = list(violations)
        lines = ", ".join(f"{field}: {msg}" for field, msg in self.violations)
        super().__init__(f"invalid sample {name!r}: {lines}")


class DataError(SoilthermError):
    """Input data (frames, ROI files, aux channels, CSVs) failed to load."""


class FrameParseError(DataError):
    """A radiometric frame file could not be parsed.

    ``row`` and ``col`` locate the offending cell (0-based) when known.
    """

    def __init__(self, message, row=None, col=None, source=""):
        self.row = row
        self.col = col
        self.source = source
        where = ""
        if row is not None:
            where = f" at row {row}, col {col}"
        prefix = f"{source}: " if source else ""
        super().__init__(f"{prefix}{message}{where}")


class SolverError(SoilthermError):
    """The time integrator failed (divergence, non-finite state)."""

    def __init__(self, message, step=None):
        self.step = step
        if step is not None:
            message = f"{message} (step {step})"
        super().__init__(message)


class StepSizeError(SolverError):
    """Explicit-scheme stability bound violated; carries a suggested dt."""

    def __init__(self, dt, dt_max):
        self.dt = dt
        self.dt_max = dt_max
        self.suggested_dt = 0.9 * dt_max
        super().__init__(
            f"dt={dt:g} s exceeds the explicit stability bound {dt_max:g} s; "
            f"use dt <= {self.suggested_dt:g} s or the implicit scheme"
        )
