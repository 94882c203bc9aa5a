"""Implementation of the base class for all experiments."""

from __future__ import annotations

import abc
from typing import TYPE_CHECKING, Callable, Sequence

import attrs
import dask
import numpy as np

from qautoencoder import __version__
from qautoencoder.configuration.experiment.parameter import FAMILY_STREAM, TEST_STREAM, TRAINING_STREAM
from qautoencoder.function.optics.mesh import MeshLayout, build_mesh
from qautoencoder.function.optics.preparation import PreparationFamily, PrepSetting, sample_prep_settings
from qautoencoder.logging.custom_logger import logger
from qautoencoder.standard.labels import OutputLabels
from qautoencoder.writer import base_functions as wfunctions

if TYPE_CHECKING:
    from pathlib import Path

    from dask.distributed import Client

    from qautoencoder.configuration.experiment.configuration import ExperimentConfiguration
    from qautoencoder.configuration.experiment.parameter import ExperimentParameters
    from qautoencoder.configuration.parameters.parameter_trainer import TrainerConfig


class BaseExperiment(abc.ABC):
    """The base class for all experiments of the command line."""

    def __init__(self: BaseExperiment, configuration: ExperimentConfiguration) -> None:
        """Store the configuration. Nothing is computed before `run`."""
        self._configuration = configuration
        self.summary: dict | None = None

    @property
    def configuration(self: BaseExperiment) -> ExperimentConfiguration:
        """The structure that store the experiment parameters."""
        return self._configuration

    @property
    def parameters(self: BaseExperiment) -> ExperimentParameters:
        return self._configuration.experiment_parameters

    @property
    def client(self: BaseExperiment) -> Client | None:
        """The dask Client getter."""
        return self._configuration.environment_parameters.client.client

    # --- Shared building blocks --- #

    @property
    def layout(self: BaseExperiment) -> MeshLayout:
        return build_mesh(self.parameters.dim, self.parameters.keep)

    def family(self: BaseExperiment) -> PreparationFamily:
        """The family of the experiment. Values left to None are drawn from the master seed."""
        rng = np.random.default_rng(self.parameters.seed_sequence(FAMILY_STREAM))
        return self.parameters.family.build(self.parameters.dim, self.parameters.keep, rng)

    def training_settings(self: BaseExperiment, count: int) -> list[PrepSetting]:
        """The fixed preparation settings of the training states. Smaller sets are prefixes of larger ones."""
        return sample_prep_settings(count, self.parameters.seed_sequence(TRAINING_STREAM), keep=self.parameters.keep)

    def test_seed(self: BaseExperiment, *key: int) -> np.random.SeedSequence:
        return self.parameters.seed_sequence(TEST_STREAM, *key)

    def trainer_config(self: BaseExperiment, *key: int, **changes: object) -> TrainerConfig:
        """The trainer parameters of a run, seeded from the master seed."""
        return attrs.evolve(self.parameters.trainer, seed=self.parameters.run_seed(*key), **changes)

    def map_runs(self: BaseExperiment, function: Callable, arguments: Sequence[tuple]) -> list:
        """
        Apply `function` to every tuple of `arguments` as independent dask tasks.

        The tasks run on the client if one was initialized, sequentially otherwise. Results keep the order of
        `arguments`.
        """
        tasks = [dask.delayed(function, pure=False)(*args) for args in arguments]
        if self.client is not None:
            return list(dask.compute(*tasks, scheduler=self.client.get))
        return list(dask.compute(*tasks, scheduler="synchronous"))

    # --- Life cycle --- #

    def initialize_dask(self: BaseExperiment) -> None:
        """Start a local client when the environment asks for parallel runs."""
        if self._configuration.environment_parameters.parallel and self.client is None:
            logger.info("Initializing the client.")
            self._configuration.environment_parameters.client.initialize_client()

    @abc.abstractmethod
    def run(self: BaseExperiment) -> dict:
        """Run the experiment and return its JSON summary."""

    @abc.abstractmethod
    def export(self: BaseExperiment, directory: Path) -> list[Path]:
        """Write the artifacts of the experiment and return their paths."""

    def close(self: BaseExperiment) -> None:
        """Clean up the system. For example, it can be used to close dask.Client."""
        self._configuration.environment_parameters.client.close_client()

    def execute(self: BaseExperiment) -> dict:
        """Run, export the artifacts and the manifest, then close the client."""
        directory = self._configuration.output_directory
        directory.mkdir(parents=True, exist_ok=True)
        logger.info(f"Running {self.parameters.experiment} (seed {self.parameters.seed}) into {directory}.")
        self.initialize_dask()
        try:
            self.summary = self.run()
            artifacts = self.export(directory)
        finally:
            self.close()
        manifest = wfunctions.export_manifest(
            directory / OutputLabels.manifest,
            configuration=self._configuration.as_dict(),
            seed=self.parameters.seed,
            artifacts=artifacts,
            version=__version__,
        )
        logger.info(f"Artifacts written to {directory} (manifest: {manifest.name}).")
        return self.summary

    def _check_summary(self: BaseExperiment) -> dict:
        if self.summary is None:
            msg = "The experiment has not been run yet."
            raise ValueError(msg)
        return self.summary
