"""The experiments of the command line, indexed by their label."""

from __future__ import annotations

from typing import TYPE_CHECKING

from qautoencoder.model.training_experiments import (
    ConvergenceExperiment,
    DriftExperiment,
    GeneralizationExperiment,
    SingleTrainingExperiment,
)
from qautoencoder.model.verification_experiments import DecodeCheckExperiment, VerifyUnitariesExperiment
from qautoencoder.standard.labels import ExperimentLabels

if TYPE_CHECKING:
    from qautoencoder.configuration.experiment.configuration import ExperimentConfiguration
    from qautoencoder.model.base_experiment import BaseExperiment

EXPERIMENTS: dict[ExperimentLabels, type[BaseExperiment]] = {
    ExperimentLabels.fig3: ConvergenceExperiment,
    ExperimentLabels.fig4: GeneralizationExperiment,
    ExperimentLabels.fig5: DriftExperiment,
    ExperimentLabels.train: SingleTrainingExperiment,
    ExperimentLabels.verify_unitaries: VerifyUnitariesExperiment,
    ExperimentLabels.decode_check: DecodeCheckExperiment,
}


def experiment_from_configuration(configuration: ExperimentConfiguration) -> BaseExperiment:
    """Instantiate the experiment named by the configuration."""
    return EXPERIMENTS[configuration.experiment_parameters.experiment](configuration)


def run_experiment(configuration: ExperimentConfiguration) -> dict:
    """Run the experiment, write its artifacts and return its summary."""
    return experiment_from_configuration(configuration).execute()


__all__ = [
    "EXPERIMENTS",
    "ConvergenceExperiment",
    "DecodeCheckExperiment",
    "DriftExperiment",
    "GeneralizationExperiment",
    "SingleTrainingExperiment",
    "VerifyUnitariesExperiment",
    "experiment_from_configuration",
    "run_experiment",
]
