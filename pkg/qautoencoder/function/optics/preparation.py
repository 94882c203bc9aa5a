"""
State preparation: families of qutrits lying in a 2-dimensional (compressible) subspace.

A physical family reproduces the optical bench: a polarization qubit set by a half- and a quarter-wave plate, a beam
displacer routing vertical polarization into a second spatial mode, and a fixed retarder (a wave plate designed for
another wavelength) scrambling the polarization of that mode. A Haar family replaces the bench by a random isometry.
"""

from __future__ import annotations

from typing import TYPE_CHECKING

import attrs
import numpy as np
from attrs import field, frozen, validators

from qautoencoder.exception.parameter_exception import MeshDimensionError, SampleCountError
from qautoencoder.function.core.qudit import PureState, haar_random_isometry, normalize
from qautoencoder.function.optics.jones import plate_pair, retarder_plate
from qautoencoder.logging.custom_logger import logger
from qautoencoder.standard.labels import FamilyLabels
from qautoencoder.standard.units import as_degrees, as_radians, wrap_degrees

if TYPE_CHECKING:
    from qautoencoder.standard.types import ComplexMatrix, Seed

DEFAULT_SCRAMBLER_RETARDANCE = 2 * np.pi * 404 / 810
"""A half-wave plate designed for 810 nm used at 404 nm."""

SCRAMBLED_MODES = (1, 2)
"""The polarization modes of the lower spatial mode, where the scrambler sits."""


@frozen(kw_only=True)
class PrepSetting:
    """
    Wave plate angles preparing the input qunit.

    The first pair (h, q) sets the polarization qubit. Qunits with n > 2 need one more (half, quarter) pair per extra
    mode, stored flat in `extra`.
    """

    h: float = field(converter=lambda value: wrap_degrees(as_degrees(value)), metadata={"units": "degree"})
    q: float = field(converter=lambda value: wrap_degrees(as_degrees(value)), metadata={"units": "degree"})
    extra: tuple[float, ...] = field(
        factory=tuple,
        converter=lambda values: tuple(float(wrap_degrees(as_degrees(value))) for value in values),
        metadata={"units": "degree"},
    )

    @extra.validator
    def _extra_pairs(self: PrepSetting, attribute: attrs.Attribute, value: tuple[float, ...]) -> None:
        if len(value) % 2 != 0:
            msg = f"Parameter {attribute.name} must hold (half, quarter) pairs. Got {len(value)} angles."
            raise ValueError(msg)

    @property
    def keep(self: PrepSetting) -> int:
        """Dimension of the prepared qunit."""
        return 2 + len(self.extra) // 2


@frozen(kw_only=True)
class PreparationFamily:
    """A fixed embedding of qunits into qudits. Drifting the family returns a new value."""

    scrambler_angle: float = field(
        default=0.0,
        converter=lambda value: wrap_degrees(as_degrees(value)),
        metadata={"description": "Orientation of the scrambling retarder.", "units": "degree"},
    )
    scrambler_retardance: float = field(
        default=DEFAULT_SCRAMBLER_RETARDANCE,
        converter=as_radians,
        metadata={"description": "Retardance of the scrambling retarder.", "units": "radian"},
    )
    generation: FamilyLabels = field(default=FamilyLabels.physical, converter=FamilyLabels)
    haar_seed: int | None = field(
        default=None,
        validator=validators.optional(validators.instance_of(int)),
        metadata={"description": "Seed of the isometry of a Haar family."},
    )
    dim: int = field(default=3, converter=int)
    keep: int = field(default=2, converter=int)

    def __attrs_post_init__(self: PreparationFamily) -> None:
        """Check that the family describes a compression the bench or the isometry can produce."""
        if not 1 <= self.keep < self.dim:
            raise MeshDimensionError(self.dim, self.keep)
        if self.generation is FamilyLabels.physical and (self.dim, self.keep) != (3, 2):
            msg = f"A physical family prepares qutrits compressible into qubits. Got d={self.dim}, n={self.keep}."
            raise ValueError(msg)
        if self.generation is FamilyLabels.haar and self.haar_seed is None:
            msg = "A Haar family needs a haar_seed."
            raise ValueError(msg)
        if self.keep < 2:  # noqa: PLR2004
            msg = "The preparation needs at least a qubit (n >= 2)."
            raise ValueError(msg)

    @property
    def scrambler(self: PreparationFamily) -> np.ndarray:
        """Jones matrix of the scrambling retarder."""
        return retarder_plate(self.scrambler_angle, self.scrambler_retardance)


def family_isometry(family: PreparationFamily) -> ComplexMatrix:
    """The d x n isometry mapping the prepared qunit into the qudit modes."""
    if family.generation is FamilyLabels.haar:
        return haar_random_isometry(family.dim, family.keep, family.haar_seed)
    isometry = np.zeros((3, 2), dtype=np.complex128)
    isometry[0, 0] = 1.0
    isometry[list(SCRAMBLED_MODES), 1] = family.scrambler[:, 0]
    return isometry


def prepare_qunit(setting: PrepSetting) -> np.ndarray:
    """Amplitudes of the qunit set by the preparation wave plates, starting from horizontal polarization."""
    angles = (setting.h, setting.q, *setting.extra)
    amplitudes = np.zeros(setting.keep, dtype=np.complex128)
    amplitudes[0] = 1.0
    for mode_lo in range(setting.keep - 1):
        pair = plate_pair(angles[2 * mode_lo], angles[2 * mode_lo + 1])
        amplitudes[mode_lo : mode_lo + 2] = pair @ amplitudes[mode_lo : mode_lo + 2]
    return amplitudes


def prepare_state(family: PreparationFamily, setting: PrepSetting) -> PureState:
    """The qudit produced by the family for a given preparation setting."""
    if setting.keep != family.keep:
        msg = f"The setting prepares a {setting.keep}-mode qunit but the family keeps {family.keep} modes."
        raise ValueError(msg)
    qunit = prepare_qunit(setting)
    if family.generation is FamilyLabels.haar:
        return normalize(family_isometry(family) @ qunit)
    amplitudes = np.zeros(3, dtype=np.complex128)
    amplitudes[:2] = qunit
    scrambled = list(SCRAMBLED_MODES)
    amplitudes[scrambled] = family.scrambler @ amplitudes[scrambled]
    return normalize(amplitudes)


def sample_prep_settings(count: int, seed: Seed = None, keep: int = 2) -> list[PrepSetting]:
    """Draw `count` settings, every angle uniform on [0, 180)."""
    if count < 1:
        raise SampleCountError(count)
    rng = np.random.default_rng(seed)
    angles = rng.uniform(0.0, 180.0, size=(count, 2 * (keep - 1)))
    return [PrepSetting(h=row[0], q=row[1], extra=row[2:]) for row in angles]


def drift_family(family: PreparationFamily, delta: float) -> PreparationFamily:
    """Rotate the scrambler by `delta` degrees."""
    if family.generation is FamilyLabels.haar and delta != 0:
        logger.warning("A Haar family has no scrambler to rotate: the drift leaves its subspace unchanged.")
    return attrs.evolve(family, scrambler_angle=family.scrambler_angle + as_degrees(delta))


def subspace_angle(family: PreparationFamily, other: PreparationFamily) -> float:
    """Largest principal angle (degrees) between the subspaces of two families."""
    overlap = family_isometry(family).conj().T @ family_isometry(other)
    singular_values = np.clip(np.linalg.svd(overlap, compute_uv=False), 0.0, 1.0)
    return float(np.rad2deg(np.arccos(singular_values.min())))
