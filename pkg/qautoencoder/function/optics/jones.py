"""
Jones matrices of the wave plates used by the state preparation and the autoencoder.

The convention is R(theta) diag(1, exp(i delta)) R(-theta), theta being the orientation of the optic axis. Global
phases are dropped: the cost only depends on moduli of amplitudes.
"""

from __future__ import annotations

import numpy as np
from attrs import field, frozen, validators

from qautoencoder.function.core.qudit import UnitaryMatrix
from qautoencoder.standard.labels import PlateLabels
from qautoencoder.standard.units import as_degrees, as_radians


@frozen(kw_only=True)
class WavePlate:
    """A birefringent plate of a given retardance, rotated by `angle` degrees."""

    kind: PlateLabels = field(converter=PlateLabels, metadata={"description": "half, quarter or retarder."})
    angle: float = field(
        default=0.0, converter=as_degrees, metadata={"description": "Optic axis orientation.", "units": "degree"}
    )
    retardance: float | None = field(
        default=None,
        converter=lambda value: None if value is None else as_radians(value),
        validator=validators.optional(validators.instance_of(float)),
        metadata={"description": "Phase delay of the slow axis, only for retarders.", "units": "radian"},
    )

    def __attrs_post_init__(self: WavePlate) -> None:
        """Retarders need a retardance, half and quarter plates have a fixed one."""
        if self.kind is PlateLabels.retarder and self.retardance is None:
            msg = "A retarder wave plate needs a retardance."
            raise ValueError(msg)
        if self.kind is not PlateLabels.retarder and self.retardance is not None:
            msg = f"A {self.kind} wave plate has a fixed retardance, do not provide one."
            raise ValueError(msg)


def half_wave_plate(angle: float) -> np.ndarray:
    """Closed form of a half-wave plate at `angle` degrees. At 45 degrees it swaps the two modes."""
    theta = np.deg2rad(angle)
    cos2, sin2 = np.cos(2 * theta), np.sin(2 * theta)
    return np.array([[cos2, sin2], [sin2, -cos2]], dtype=np.complex128)


def quarter_wave_plate(angle: float) -> np.ndarray:
    """Closed form of a quarter-wave plate at `angle` degrees."""
    theta = np.deg2rad(angle)
    cos, sin = np.cos(theta), np.sin(theta)
    off_diagonal = (1 - 1j) * sin * cos
    return np.array(
        [[cos**2 + 1j * sin**2, off_diagonal], [off_diagonal, sin**2 + 1j * cos**2]],
        dtype=np.complex128,
    )


def retarder_plate(angle: float, retardance: float) -> np.ndarray:
    """A plate of arbitrary retardance (radians) at `angle` degrees."""
    theta = np.deg2rad(angle)
    cos, sin = np.cos(theta), np.sin(theta)
    rotation = np.array([[cos, -sin], [sin, cos]])
    return rotation @ np.diag([1.0, np.exp(1j * retardance)]) @ rotation.T


def jones_array(plate: WavePlate) -> np.ndarray:
    """The raw 2x2 Jones matrix of a wave plate."""
    match plate.kind:
        case PlateLabels.half:
            return half_wave_plate(plate.angle)
        case PlateLabels.quarter:
            return quarter_wave_plate(plate.angle)
        case PlateLabels.retarder:
            return retarder_plate(plate.angle, plate.retardance)


def jones_matrix(plate: WavePlate) -> UnitaryMatrix:
    """The 2x2 unitary of a wave plate."""
    return UnitaryMatrix(jones_array(plate))


def plate_pair(half_angle: float, quarter_angle: float) -> np.ndarray:
    """A half-wave plate followed by a quarter-wave plate: Q(quarter_angle) @ H(half_angle)."""
    return quarter_wave_plate(quarter_angle) @ half_wave_plate(half_angle)
