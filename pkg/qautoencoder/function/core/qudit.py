"""
Exact complex linear algebra for single photon states spread over d optical modes.

Notes
-----
Modes are indexed from 0 internally. Reports and command line outputs label them from 1 so that the junk mode of a
qutrit compressor is the "third output mode".

"""

from __future__ import annotations

from typing import TYPE_CHECKING

import numpy as np
from attrs import Attribute, cmp_using, field, frozen, validators

from qautoencoder.exception.parameter_exception import MeshDimensionError
from qautoencoder.exception.state_exception import DimensionMismatchError, ModeIndexError, ZeroVectorError

if TYPE_CHECKING:
    from qautoencoder.standard.types import ComplexMatrix, ComplexVector, Seed

VECTOR_TOLERANCE = 1e-12
"""Tolerance of vector identities (normalization, norm preservation)."""

UNITARY_TOLERANCE = 1e-10
"""Tolerance on ||U^dagger U - I||_max for the transformations built by the package."""


def _readonly(data: object, ndim: int) -> np.ndarray:
    array = np.array(data, dtype=np.complex128)
    if array.ndim != ndim:
        msg = f"Expected a {ndim}D array, got shape {array.shape}."
        raise ValueError(msg)
    array.setflags(write=False)
    return array


def _readonly_vector(data: object) -> np.ndarray:
    return _readonly(data, 1)


def _readonly_matrix(data: object) -> np.ndarray:
    return _readonly(data, 2)


def unitarity_error(entries: ComplexMatrix) -> float:
    """Return ||U^dagger U - I||_max."""
    entries = np.asarray(entries)
    return float(np.max(np.abs(entries.conj().T @ entries - np.eye(entries.shape[0]))))


def is_unitary(entries: ComplexMatrix, atol: float = UNITARY_TOLERANCE) -> bool:
    entries = np.asarray(entries)
    if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
        return False
    return unitarity_error(entries) <= atol


@frozen
class PureState:
    """A normalized vector of complex amplitudes over d optical modes."""

    amps: np.ndarray = field(
        converter=_readonly_vector,
        eq=cmp_using(eq=np.array_equal),
        metadata={"description": "Probability amplitudes, one per optical mode."},
    )
    atol: float = field(
        default=VECTOR_TOLERANCE,
        eq=False,
        validator=validators.gt(0),
        metadata={"description": "Tolerance on the unit norm of the amplitudes."},
    )

    @amps.validator
    def _amps_normalized(self: PureState, attribute: Attribute, value: np.ndarray) -> None:
        if value.size < 2:
            msg = f"Parameter {attribute.name} must describe at least 2 modes. Got {value.size}."
            raise ValueError(msg)
        norm_squared = float(np.vdot(value, value).real)
        if abs(norm_squared - 1.0) > self.atol:
            msg = f"Parameter {attribute.name} is not normalized: sum |amps|^2 = {norm_squared}."
            raise ValueError(msg)

    @property
    def dim(self: PureState) -> int:
        """Number of optical modes."""
        return self.amps.size


@frozen
class UnitaryMatrix:
    """A d x d transformation of the mode amplitudes."""

    entries: np.ndarray = field(
        converter=_readonly_matrix,
        eq=cmp_using(eq=np.array_equal),
        metadata={"description": "The complex matrix, row index = output mode, column index = input mode."},
    )
    atol: float = field(
        default=UNITARY_TOLERANCE,
        eq=False,
        validator=validators.gt(0),
        metadata={
            "description": (
                "Tolerance on ||U^dagger U - I||_max. Matrices printed with a finite number of decimals need a "
                "larger tolerance than the ones built by the package."
            )
        },
    )

    @entries.validator
    def _entries_unitary(self: UnitaryMatrix, attribute: Attribute, value: np.ndarray) -> None:
        if value.shape[0] != value.shape[1]:
            msg = f"Parameter {attribute.name} must be square. Got shape {value.shape}."
            raise ValueError(msg)
        error = unitarity_error(value)
        if error > self.atol:
            msg = f"Parameter {attribute.name} is not unitary: ||U^dagger U - I||_max = {error:.3e} > {self.atol}."
            raise ValueError(msg)

    @property
    def dim(self: UnitaryMatrix) -> int:
        """Number of optical modes."""
        return self.entries.shape[0]

    @property
    def dagger(self: UnitaryMatrix) -> UnitaryMatrix:
        """The inverse transformation U^dagger."""
        return UnitaryMatrix(self.entries.conj().T, atol=self.atol)


@frozen
class TwoModeGate:
    """A 2x2 unitary acting on the modes (mode_lo, mode_hi)."""

    mode_lo: int = field(converter=int, validator=validators.ge(0), metadata={"description": "First mode (i)."})
    mode_hi: int = field(converter=int, metadata={"description": "Second mode (j > i)."})
    block: UnitaryMatrix = field(
        validator=validators.instance_of(UnitaryMatrix), metadata={"description": "The 2x2 transformation."}
    )

    @mode_hi.validator
    def _mode_hi_above_mode_lo(self: TwoModeGate, attribute: Attribute, value: int) -> None:
        if value <= self.mode_lo:
            msg = f"Parameter {attribute.name} ({value}) must be strictly greater than mode_lo ({self.mode_lo})."
            raise ValueError(msg)

    @block.validator
    def _block_is_2x2(self: TwoModeGate, attribute: Attribute, value: UnitaryMatrix) -> None:
        if value.dim != 2:  # noqa: PLR2004
            msg = f"Parameter {attribute.name} must be a 2x2 matrix. Got dimension {value.dim}."
            raise ValueError(msg)


def normalize(vector: ComplexVector) -> PureState:
    """Scale a non-zero vector to unit norm, preserving its direction."""
    vector = np.asarray(vector, dtype=np.complex128)
    norm = float(np.linalg.norm(vector))
    if norm == 0.0 or not np.isfinite(norm):
        raise ZeroVectorError(norm)
    return PureState(vector / norm)


def _check_dims(expected: int, got: int, what: str) -> None:
    if expected != got:
        raise DimensionMismatchError(expected, got, what)


def apply_unitary(unitary: UnitaryMatrix, state: PureState) -> PureState:
    """Return U|s>. The tolerance of the result follows the tolerance of the transformation."""
    _check_dims(unitary.dim, state.dim, "state")
    atol = max(state.atol, unitary.atol * unitary.dim)
    return PureState(unitary.entries @ state.amps, atol=atol)


def embed_two_mode(gate: TwoModeGate, dim: int) -> UnitaryMatrix:
    """Identity on every mode except the 2x2 block placed at rows/columns (i, j)."""
    if gate.mode_hi >= dim:
        raise ModeIndexError(gate.mode_lo, gate.mode_hi, dim)
    entries = np.eye(dim, dtype=np.complex128)
    modes = np.array([gate.mode_lo, gate.mode_hi])
    entries[np.ix_(modes, modes)] = gate.block.entries
    return UnitaryMatrix(entries, atol=gate.block.atol)


def inner_product(left: PureState, right: PureState) -> complex:
    """Return <left|right>, conjugating the left argument."""
    _check_dims(left.dim, right.dim, "inner product")
    return complex(np.vdot(left.amps, right.amps))


def fidelity(left: PureState, right: PureState) -> float:
    """Return |<left|right>|^2, insensitive to global phases."""
    return abs(inner_product(left, right)) ** 2


def _complex_gaussian(rng: np.random.Generator, shape: tuple[int, int]) -> np.ndarray:
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2.0)


def _orthonormalize(matrix: np.ndarray) -> np.ndarray:
    """QR with the phases of R's diagonal moved into Q, which makes the result Haar distributed."""
    q, r = np.linalg.qr(matrix)
    diagonal = np.diagonal(r)
    return q * (diagonal / np.abs(diagonal))


def haar_random_isometry(dim: int, keep: int, seed: Seed = None) -> ComplexMatrix:
    """
    Sample a d x n matrix with orthonormal columns, spanning a Haar random n-dimensional subspace.

    Parameters
    ----------
    dim : int
        Dimension d of the qudit.
    keep : int
        Dimension n < d of the subspace.
    seed : int | np.random.SeedSequence | None
        The same seed always gives the same isometry.

    """
    if not 1 <= keep < dim:
        raise MeshDimensionError(dim, keep)
    rng = np.random.default_rng(seed)
    return _orthonormalize(_complex_gaussian(rng, (dim, keep)))


def haar_random_unitary(dim: int, seed: Seed = None) -> UnitaryMatrix:
    """Sample a d x d Haar random unitary."""
    if dim < 1:
        raise MeshDimensionError(dim, dim)
    rng = np.random.default_rng(seed)
    return UnitaryMatrix(_orthonormalize(_complex_gaussian(rng, (dim, dim))))


def haar_random_state(dim: int, seed: Seed = None) -> PureState:
    """Sample a Haar random pure state over d modes."""
    rng = np.random.default_rng(seed)
    return normalize(_complex_gaussian(rng, (dim, 1))[:, 0])
