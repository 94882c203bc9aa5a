"""
The trainable mesh: a triangle of adjacent two-mode gates, each realized by a half-wave plate followed by a
quarter-wave plate.

Notes
-----
For every junk mode k (from d-1 down to n) the mesh holds a chain of gates (0, 1), (1, 2), ..., (k-1, k). The chain of
the last junk mode is applied first, so the row of U belonging to mode k is only shaped by its own chain and by the
chains applied before it. Single mode phases and the chains that would only feed the kept modes are omitted because
they cannot change the junk mode occupation. This leaves d(d-1)/2 - n(n-1)/2 gates and two angles per gate.

"""

from __future__ import annotations

from typing import TYPE_CHECKING, Iterable

import numpy as np
from attrs import Attribute, cmp_using, field, frozen, validators
from scipy.optimize import least_squares

from qautoencoder.exception.parameter_exception import MeshDimensionError, ParameterLengthError
from qautoencoder.exception.state_exception import DimensionMismatchError
from qautoencoder.function.core.compiled_functions import mesh_product
from qautoencoder.function.core.qudit import UnitaryMatrix
from qautoencoder.function.optics.jones import plate_pair
from qautoencoder.logging.custom_logger import logger
from qautoencoder.standard.units import wrap_degrees

if TYPE_CHECKING:
    from qautoencoder.standard.types import ComplexMatrix, Seed


@frozen(kw_only=True)
class GateSlot:
    """One two-mode gate of the mesh and the indices of its two wave plate angles."""

    mode_lo: int = field(converter=int, validator=validators.ge(0))
    mode_hi: int = field(converter=int)
    hwp_index: int = field(converter=int, validator=validators.ge(0))
    qwp_index: int = field(converter=int, validator=validators.ge(0))
    target: int = field(converter=int, metadata={"description": "The junk mode whose chain contains this gate."})

    @mode_hi.validator
    def _adjacent_modes(self: GateSlot, attribute: Attribute, value: int) -> None:
        if value != self.mode_lo + 1:
            msg = f"Parameter {attribute.name} must be mode_lo + 1 ({self.mode_lo + 1}), got {value}."
            raise ValueError(msg)


@frozen(kw_only=True)
class MeshLayout:
    """Ordered gate slots of a (d, n) compressor. Slots are listed in the order light goes through them."""

    dim: int = field(converter=int)
    keep: int = field(converter=int)
    gates: tuple[GateSlot, ...] = field(converter=tuple)

    @property
    def param_count(self: MeshLayout) -> int:
        """Two angles (half and quarter plate) per gate slot."""
        return 2 * len(self.gates)

    @property
    def junk_modes(self: MeshLayout) -> range:
        return range(self.keep, self.dim)

    def random_parameters(self: MeshLayout, rng: np.random.Generator) -> ParameterVector:
        """Angles drawn uniformly in [0, 360)."""
        return ParameterVector(rng.uniform(0.0, 360.0, self.param_count))


def _as_angles(values: Iterable[float]) -> np.ndarray:
    angles = wrap_degrees(np.array(values, dtype=np.float64).reshape(-1))
    angles = np.atleast_1d(angles)
    angles.setflags(write=False)
    return angles


@frozen
class ParameterVector:
    """Wave plate angles in degrees, wrapped into [0, 360)."""

    angles: np.ndarray = field(converter=_as_angles, eq=cmp_using(eq=np.array_equal))

    def __len__(self: ParameterVector) -> int:
        return self.angles.size

    def rotate(self: ParameterVector, index: int, delta: float) -> ParameterVector:
        """Rotate a single plate by `delta` degrees."""
        angles = self.angles.copy()
        angles[index] += delta
        return ParameterVector(angles)

    def shift(self: ParameterVector, delta: float | np.ndarray) -> ParameterVector:
        """Rotate every plate by `delta` degrees (scalar or one value per plate)."""
        return ParameterVector(self.angles + delta)


def build_mesh(dim: int, keep: int) -> MeshLayout:
    """Reck style triangle of adjacent gates feeding the junk modes d-1 down to n."""
    if not 1 <= keep < dim:
        raise MeshDimensionError(dim, keep)
    gates = []
    for target in range(dim - 1, keep - 1, -1):
        for mode_lo in range(target):
            slot = len(gates)
            gates.append(
                GateSlot(
                    mode_lo=mode_lo, mode_hi=mode_lo + 1, hwp_index=2 * slot, qwp_index=2 * slot + 1, target=target
                )
            )
    return MeshLayout(dim=dim, keep=keep, gates=gates)


def mesh_blocks(layout: MeshLayout, parameters: ParameterVector) -> np.ndarray:
    """The 2x2 block of each slot: Q(x[qwp]) @ H(x[hwp])."""
    if len(parameters) != layout.param_count:
        raise ParameterLengthError(layout.param_count, len(parameters))
    angles = parameters.angles
    blocks = np.empty((len(layout.gates), 2, 2), dtype=np.complex128)
    for slot, gate in enumerate(layout.gates):
        blocks[slot] = plate_pair(angles[gate.hwp_index], angles[gate.qwp_index])
    return blocks


def mesh_array(layout: MeshLayout, parameters: ParameterVector) -> ComplexMatrix:
    """The raw d x d matrix of the mesh, later slots multiplying on the left."""
    blocks = mesh_blocks(layout, parameters)
    modes_lo = np.array([gate.mode_lo for gate in layout.gates], dtype=np.int64)
    modes_hi = np.array([gate.mode_hi for gate in layout.gates], dtype=np.int64)
    return mesh_product(blocks, modes_lo, modes_hi, layout.dim)


def mesh_unitary(layout: MeshLayout, parameters: ParameterVector) -> UnitaryMatrix:
    """The unitary realized by the mesh at the given wave plate angles."""
    return UnitaryMatrix(mesh_array(layout, parameters))


@frozen(kw_only=True)
class MeshFit:
    """Result of fitting mesh angles to a target transformation."""

    parameters: ParameterVector
    residual: float = field(metadata={"description": "max |mesh - target| over the junk rows, phases aligned."})


def _aligned_junk_rows(mesh: ComplexMatrix, target: ComplexMatrix, keep: int) -> np.ndarray:
    """Difference of the junk rows after removing the best global phase of each row."""
    mesh_rows = mesh[keep:]
    target_rows = target[keep:]
    overlaps = np.einsum("ij,ij->i", target_rows.conj(), mesh_rows)
    phases = np.exp(1j * np.angle(overlaps))
    return mesh_rows - phases[:, None] * target_rows


def fit_mesh_parameters(
    target: ComplexMatrix, layout: MeshLayout, *, starts: int = 16, seed: Seed = 0
) -> MeshFit:
    """
    Search for mesh angles reproducing the junk rows of `target` up to a phase per row.

    The kept rows and the row phases have no effect on the cost, so they are not fitted. Several random starts are
    refined by a least squares solver and the best one is returned.
    """
    target = np.asarray(target, dtype=np.complex128)
    if target.shape != (layout.dim, layout.dim):
        raise DimensionMismatchError(layout.dim, target.shape[0], "target matrix")

    def difference(angles: np.ndarray) -> np.ndarray:
        return _aligned_junk_rows(mesh_array(layout, ParameterVector(angles)), target, layout.keep)

    def residuals(angles: np.ndarray) -> np.ndarray:
        rows = difference(angles)
        return np.concatenate([rows.real.ravel(), rows.imag.ravel()])

    rng = np.random.default_rng(seed)
    best = None
    for _ in range(starts):
        start = layout.random_parameters(rng).angles
        solution = least_squares(residuals, start, xtol=1e-15, ftol=1e-15, gtol=1e-15, max_nfev=2000)
        residual = float(np.max(np.abs(difference(solution.x))))
        if best is None or residual < best.residual:
            best = MeshFit(parameters=ParameterVector(solution.x), residual=residual)
    logger.debug(f"Best mesh fit residual over {starts} starts: {best.residual:.3e}.")
    return best
