"""Exception types shared across the package."""


class SMetricError(Exception):
    """Base class for all errors raised by this package."""


class DimensionMismatchError(SMetricError):
    """A point's dimension does not match the space or map it is used with."""


class ExpressionError(SMetricError):
    """Evaluation of a DSL expression failed (domain error, overflow, ...)."""


class MapParseError(SMetricError):
    """Syntax or validation error in DSL source, with position information."""

    def __init__(self, message: str, line: int = 0, col: int = 0):
        self.line = line
        self.col = col
        if line:
            message = f"{message} (line {line}, column {col})"
        super().__init__(message)


class UnsupportedFamilyError(SMetricError):
    """The requested closed-form operation is not available for this family."""


class RadiusUndefinedError(SMetricError):
    """No non-fixed point in the sample: the minimal displacement is undefined."""


class ScenarioError(SMetricError):
    """A scenario file failed to load or validate."""
