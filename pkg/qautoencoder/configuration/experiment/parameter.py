"""
This module stores the parameters of an experiment. It uses the attrs library to define the class attributes.
"""

from __future__ import annotations

from pathlib import Path
from typing import Literal

import numpy as np
from attrs import Attribute, field, frozen, validators

from qautoencoder.configuration.parameters.parameter_drift import DriftSchedule
from qautoencoder.configuration.parameters.parameter_environment import EnvironmentParameter
from qautoencoder.configuration.parameters.parameter_family import FamilyParameter
from qautoencoder.configuration.parameters.parameter_measurement import MeasurementBackend
from qautoencoder.configuration.parameters.parameter_trainer import TrainerConfig
from qautoencoder.exception.parameter_exception import MeshDimensionError
from qautoencoder.logging.custom_logger import logger
from qautoencoder.standard.labels import ExperimentLabels, FamilyLabels

RUN_STREAM = 0
FAMILY_STREAM = 1
TRAINING_STREAM = 2
TEST_STREAM = 3

EXPERIMENT_TRAINER_DEFAULTS = {
    ExperimentLabels.fig3: {"early_stop": 0.02},
    ExperimentLabels.fig5: {"max_evals": 600},
}
"""Trainer values of an experiment when the configuration file does not give them."""


def _optional_path(value: str | Path | None) -> Path | None:
    return None if value is None else Path(value)


@frozen(kw_only=True)
class OutputParameter:
    """Where the artifacts of an experiment are written."""

    directory: Path | None = field(
        default=None,
        converter=_optional_path,
        metadata={"description": "Output directory. Falls back on $QAE_OUTPUT_ROOT/<experiment> when None."},
    )
    dataset_engine: Literal["netcdf4", "zarr"] | None = field(
        default=None,
        validator=validators.optional(validators.in_(["netcdf4", "zarr"])),
        metadata={"description": "Also export the traces as a xarray.Dataset with this engine."},
    )


@frozen(kw_only=True)
class ExperimentParameters:
    """Every parameter of an experiment. The master seed fans out to one stream per run and per purpose."""

    experiment: ExperimentLabels = field(converter=ExperimentLabels)
    seed: int = field(default=0, converter=int, validator=validators.ge(0))
    dims: tuple[int, int] = field(
        default=(3, 2),
        converter=lambda value: tuple(int(v) for v in value),
        metadata={"description": "(d, n): qudit dimension and number of kept modes."},
    )
    runs: int = field(default=20, converter=int, validator=validators.ge(1))
    training_states: int = field(default=2, converter=int, validator=validators.ge(1))
    training_sizes: tuple[int, ...] = field(
        default=(1, 2, 3),
        converter=lambda value: tuple(int(v) for v in value),
        metadata={"description": "Training set sizes compared by the generalization experiment."},
    )
    test_states: int = field(default=20, converter=int, validator=validators.ge(1))
    threshold: float = field(
        default=0.05,
        converter=float,
        validator=[validators.gt(0), validators.lt(1)],
        metadata={"description": "A run has converged when some measured cost is lower or equal to this value."},
    )
    samples: int = field(
        default=1000,
        converter=int,
        validator=validators.ge(1),
        metadata={"description": "Random (U, state) pairs checked by decode-check."},
    )
    matrix_file: Path | None = field(
        default=None,
        converter=_optional_path,
        metadata={"description": "Matrices checked by verify-unitaries. The bundled ones when None."},
    )
    family: FamilyParameter = field(factory=FamilyParameter, validator=validators.instance_of(FamilyParameter))
    trainer: TrainerConfig = field(factory=TrainerConfig, validator=validators.instance_of(TrainerConfig))
    backend: MeasurementBackend = field(
        factory=MeasurementBackend, validator=validators.instance_of(MeasurementBackend)
    )
    drift: DriftSchedule = field(factory=DriftSchedule, validator=validators.instance_of(DriftSchedule))
    output: OutputParameter = field(factory=OutputParameter, validator=validators.instance_of(OutputParameter))
    environment: EnvironmentParameter = field(
        factory=EnvironmentParameter, validator=validators.instance_of(EnvironmentParameter)
    )

    @dims.validator
    def _dims_compress(self: ExperimentParameters, attribute: Attribute, value: tuple[int, ...]) -> None:
        if len(value) != 2:  # noqa: PLR2004
            msg = f"Parameter {attribute.name} must be a (d, n) pair. Got {value}."
            raise ValueError(msg)
        if not 1 <= value[1] < value[0]:
            raise MeshDimensionError(*value)

    @training_sizes.validator
    def _sizes_positive(self: ExperimentParameters, attribute: Attribute, value: tuple[int, ...]) -> None:
        if len(value) == 0 or min(value) < 1:
            msg = f"Parameter {attribute.name} must hold positive sizes. Got {value}."
            raise ValueError(msg)

    def __attrs_post_init__(self: ExperimentParameters) -> None:
        """Check the combination of family and dimensions, warn about ignored values."""
        if self.family.generation is FamilyLabels.physical and self.dims != (3, 2):
            msg = f"A physical family only prepares qutrits compressible into qubits, not dims={self.dims}."
            raise ValueError(msg)
        if self.trainer.seed is not None:
            logger.warning("trainer.seed is ignored: every run draws its seed from the experiment seed.")

    @property
    def dim(self: ExperimentParameters) -> int:
        return self.dims[0]

    @property
    def keep(self: ExperimentParameters) -> int:
        return self.dims[1]

    def seed_sequence(self: ExperimentParameters, *key: int) -> np.random.SeedSequence:
        """
        A counter based child of the master seed. The same key always gives the same stream, whatever the number of
        runs of the experiment.
        """
        return np.random.SeedSequence(self.seed, spawn_key=key)

    def run_seed(self: ExperimentParameters, *key: int) -> int:
        """Seed of a training run, e.g. `run_seed(index)` or `run_seed(size, index)`."""
        return int(self.seed_sequence(RUN_STREAM, *key).generate_state(1)[0])
