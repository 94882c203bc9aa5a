"""List of the exceptions raised when building the device or reading a configuration."""

from __future__ import annotations

from pathlib import Path


class MeshDimensionError(ValueError):
    """Raised when the (d, n) pair does not describe a compression."""

    def __init__(self: MeshDimensionError, dim: int, keep: int) -> None:
        """Constructor."""
        msg = f"Expected 1 <= n < d to compress qudits into qunits. Got d={dim} and n={keep}."
        super().__init__(msg)
        self.dim = dim
        self.keep = keep


class ParameterLengthError(ValueError):
    """Raised when the parameter vector does not match the mesh layout."""

    def __init__(self: ParameterLengthError, expected: int, got: int) -> None:
        """Constructor."""
        msg = f"The mesh expects {expected} wave plate angles, got {got}."
        super().__init__(msg)
        self.expected = expected
        self.got = got


class SampleCountError(ValueError):
    """Raised when a non positive number of samples is requested."""

    def __init__(self: SampleCountError, count: int) -> None:
        """Constructor."""
        msg = f"The number of samples must be a positive integer. Got {count}."
        super().__init__(msg)
        self.count = count


class ConfigurationError(ValueError):
    """Raised when an experiment configuration cannot be understood."""

    def __init__(self: ConfigurationError, reason: str, source: str | Path | None = None) -> None:
        """Constructor."""
        msg = reason if source is None else f"{source}: {reason}"
        super().__init__(msg)
        self.reason = reason
        self.source = source


class MatrixFileError(ValueError):
    """Raised when a matrix file does not follow the 're im' row-major format."""

    def __init__(self: MatrixFileError, line_number: int, reason: str, source: str | Path | None = None) -> None:
        """Constructor."""
        location = f"line {line_number}" if source is None else f"{source}, line {line_number}"
        msg = f"Cannot parse matrix file ({location}): {reason}"
        super().__init__(msg)
        self.line_number = line_number
        self.reason = reason
        self.source = source
