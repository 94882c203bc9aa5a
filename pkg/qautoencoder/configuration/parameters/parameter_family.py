"""Description of the compressible family an experiment trains on."""

from __future__ import annotations

import numpy as np
from attrs import field, frozen, validators

from qautoencoder.function.optics.preparation import DEFAULT_SCRAMBLER_RETARDANCE, PreparationFamily
from qautoencoder.standard.labels import FamilyLabels
from qautoencoder.standard.units import as_degrees, as_radians


@frozen(kw_only=True)
class FamilyParameter:
    """
    The family as written in a configuration file.

    The scrambler angle and the Haar seed are left to None to be drawn once from the experiment seed.
    """

    generation: FamilyLabels = field(default=FamilyLabels.physical, converter=FamilyLabels)
    scrambler_angle: float | None = field(
        default=None,
        converter=lambda value: None if value is None else as_degrees(value),
        metadata={"description": "Scrambler orientation, drawn in [0, 180) if None.", "units": "degree"},
    )
    scrambler_retardance: float = field(
        default=DEFAULT_SCRAMBLER_RETARDANCE,
        converter=as_radians,
        metadata={"description": "Retardance of the scrambler.", "units": "radian"},
    )
    haar_seed: int | None = field(
        default=None,
        validator=validators.optional(validators.instance_of(int)),
        metadata={"description": "Seed of the random isometry of a Haar family. Drawn if None."},
    )

    def build(self: FamilyParameter, dim: int, keep: int, rng: np.random.Generator) -> PreparationFamily:
        """Create the family, drawing the missing values from `rng`."""
        if self.generation is FamilyLabels.haar:
            haar_seed = self.haar_seed if self.haar_seed is not None else int(rng.integers(2**32))
            return PreparationFamily(generation=self.generation, haar_seed=haar_seed, dim=dim, keep=keep)
        angle = self.scrambler_angle if self.scrambler_angle is not None else rng.uniform(0.0, 180.0)
        return PreparationFamily(
            scrambler_angle=angle,
            scrambler_retardance=self.scrambler_retardance,
            generation=self.generation,
            dim=dim,
            keep=keep,
        )
