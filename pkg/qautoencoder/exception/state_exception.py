"""Exceptions raised by the linear algebra and compression layers."""

from __future__ import annotations


class ZeroVectorError(ValueError):
    """Raised when a state cannot be normalized because its norm is zero."""

    def __init__(self: ZeroVectorError, norm: float) -> None:
        """Constructor."""
        msg = f"Cannot normalize a vector of norm {norm}. The state preparation is degenerate."
        super().__init__(msg)
        self.norm = norm


class DimensionMismatchError(ValueError):
    """Raised when two objects acting on optical modes do not share the same dimension."""

    def __init__(self: DimensionMismatchError, expected: int, got: int, what: str = "state") -> None:
        """Constructor."""
        msg = f"Dimension mismatch for {what}: expected {expected} modes, got {got}."
        super().__init__(msg)
        self.expected = expected
        self.got = got
        self.what = what


class ModeIndexError(IndexError):
    """Raised when a two-mode gate addresses modes outside the embedding dimension."""

    def __init__(self: ModeIndexError, mode_lo: int, mode_hi: int, dim: int) -> None:
        """Constructor."""
        msg = f"Modes ({mode_lo}, {mode_hi}) are not valid in dimension {dim}. Expected 0 <= i < j < {dim}."
        super().__init__(msg)
        self.mode_lo = mode_lo
        self.mode_hi = mode_hi
        self.dim = dim


class CompressionImpossibleError(ValueError):
    """Raised when a state leaves the device entirely through the junk modes."""

    def __init__(self: CompressionImpossibleError, p_junk: float) -> None:
        """Constructor."""
        msg = f"Compression impossible for this state: junk probability is {p_junk}."
        super().__init__(msg)
        self.p_junk = p_junk


class EmptyTrainingSetError(ValueError):
    """Raised when a cost is requested over no training state."""

    def __init__(self: EmptyTrainingSetError) -> None:
        """Constructor."""
        super().__init__("The training set must contain at least one state.")
