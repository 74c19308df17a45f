"""Exceptions raised by liquilens."""

from __future__ import annotations


class LiquilensError(Exception):
    """Base class for all liquilens errors."""


class LensDomainError(LiquilensError, ValueError):
    """An input is outside the valid domain of a lens or cap relation."""


class UnreachableFocalError(LensDomainError):
    """The requested focal length needs a cap beyond the hemispherical regime."""


class RayTraceError(LiquilensError):
    """Base class for ray tracing failures."""


class RayMissError(RayTraceError):
    """A ray has no forward intersection with a surface, or is outside the aperture."""


class TotalInternalReflectionError(RayTraceError):
    """A ray is totally internally reflected at an interface."""


class NonConvergingRayError(RayTraceError):
    """A ray never crosses the optical axis in the forward direction."""


class MeasurementError(LiquilensError, ValueError):
    """Measurement data is malformed or violates the series invariants."""

    def __init__(self, message: str, problems: list[str] | None = None) -> None:
        """Keep the individual problems so callers can report each of them."""
        self.problems = problems or [message]
        super().__init__(message if problems is None else f"{message}: " + "; ".join(self.problems))


class MeasurementParseError(MeasurementError):
    """A measurement file could not be parsed."""

    def __init__(self, message: str, lineno: int) -> None:
        """Remember the offending line number."""
        self.lineno = lineno
        super().__init__(f"line {lineno}: {message}")


class FitError(LiquilensError):
    """A fit is degenerate or has no feasible solution."""


class ConfigError(LiquilensError):
    """A configuration file or value is invalid."""
