"""The experiments that train the autoencoder: convergence, generalization, drift and a single run."""

from __future__ import annotations

from typing import TYPE_CHECKING

import attrs
import numpy as np
import pandas as pd
import xarray as xr

from qautoencoder.function.optics.preparation import subspace_angle
from qautoencoder.function.trainer.aggregation import aggregate_traces, held_costs
from qautoencoder.function.trainer.generalization import evaluate_generalization
from qautoencoder.function.trainer.training import PreparedTrainingSource, TrainingTrace, initial_parameters, train
from qautoencoder.logging.custom_logger import logger
from qautoencoder.model.base_experiment import BaseExperiment
from qautoencoder.model.summary import RunSummary
from qautoencoder.standard import attributs
from qautoencoder.standard.labels import CoordinatesLabels, OutputLabels, TraceLabels
from qautoencoder.writer import base_functions as wfunctions

if TYPE_CHECKING:
    from pathlib import Path

    from qautoencoder.configuration.parameters.parameter_trainer import TrainerConfig


def first_evaluation_below(trace: TrainingTrace, threshold: float) -> int | None:
    """eval_index of the first record whose cost is lower or equal to `threshold`."""
    below = np.flatnonzero(trace.costs <= threshold)
    return int(trace.eval_indices[below[0]]) if below.size else None


class TrainingExperiment(BaseExperiment):
    """Common export of the experiments producing named training traces."""

    def __init__(self: TrainingExperiment, *args: object, **kwargs: object) -> None:
        """The traces are filled by `run`."""
        super().__init__(*args, **kwargs)
        self.traces: dict[str, TrainingTrace] = {}

    def source(self: TrainingExperiment, count: int | None = None) -> PreparedTrainingSource:
        """The training states: the first `count` fixed settings prepared by the experiment family."""
        count = self.parameters.training_states if count is None else count
        return PreparedTrainingSource(family=self.family(), settings=self.training_settings(count))

    def train_all(self: TrainingExperiment, runs: dict[str, tuple]) -> dict[str, TrainingTrace]:
        """Train every named (source, trainer config, drift) triple as an independent task."""
        layout, backend = self.layout, self.parameters.backend
        arguments = [(layout, source, config, drift, backend) for source, config, drift in runs.values()]
        traces = self.map_runs(train, arguments)
        return dict(zip(runs, traces, strict=True))

    def summarize(
        self: TrainingExperiment, threshold: float, tests: dict[str, np.ndarray] | None = None
    ) -> list[RunSummary]:
        tests = {} if tests is None else tests
        return [
            RunSummary.from_trace(name, trace, threshold, tests.get(name)) for name, trace in self.traces.items()
        ]

    def export_traces(self: TrainingExperiment, directory: Path) -> list[Path]:
        """One CSV per trace, and one dataset per trace if an engine is configured."""
        paths = [
            wfunctions.export_trace(trace, directory / OutputLabels.trace(name)) for name, trace in self.traces.items()
        ]
        engine = self.parameters.output.dataset_engine
        if engine is not None:
            extension = ".zarr" if engine == "zarr" else ".nc"
            for name, trace in self.traces.items():
                path = directory / f"trace_{name}{extension}"
                paths.append(wfunctions.export_dataset(trace.to_dataset(), path, engine))
        return paths

    def export_summary(self: TrainingExperiment, directory: Path) -> Path:
        return wfunctions.export_json(self._check_summary(), directory / OutputLabels.summary)


class ConvergenceExperiment(TrainingExperiment):
    """
    Repeated training from random initializations on one fixed training set.

    After a run stops early its cost is held at the last measured value, and the mean curve and the one standard
    deviation band are computed per evaluation index.
    """

    def __init__(self: ConvergenceExperiment, *args: object, **kwargs: object) -> None:
        super().__init__(*args, **kwargs)
        self.aggregate: xr.Dataset | None = None

    def run(self: ConvergenceExperiment) -> dict:
        parameters = self.parameters
        source = self.source()
        runs = {
            f"run_{index:02d}": (source, self.trainer_config(index), parameters.drift)
            for index in range(parameters.runs)
        }
        self.traces = self.train_all(runs)
        self.aggregate = aggregate_traces(list(self.traces.values()), length=parameters.trainer.max_evals)

        early_stop = parameters.trainer.early_stop
        threshold = early_stop if early_stop is not None else parameters.threshold
        summaries = self.summarize(threshold)
        converged = np.mean([summary.converged for summary in summaries])
        mean_curve = self.aggregate[TraceLabels.mean]
        logger.info(
            f"{len(summaries)} runs: {converged:.0%} reached {threshold}, "
            f"final mean cost {float(mean_curve[-1]):.4f}."
        )
        return {
            "experiment": parameters.experiment.value,
            "seed": parameters.seed,
            "threshold": threshold,
            "converged_fraction": float(converged),
            "final_mean_cost": float(mean_curve[-1]),
            "final_std_cost": float(self.aggregate[TraceLabels.std][-1]),
            "runs": [summary.as_dict() for summary in summaries],
        }

    def export(self: ConvergenceExperiment, directory: Path) -> list[Path]:
        paths = self.export_traces(directory)
        paths.append(wfunctions.export_aggregate(self.aggregate, directory / OutputLabels.aggregate))
        engine = self.parameters.output.dataset_engine
        if engine is not None:
            extension = ".zarr" if engine == "zarr" else ".nc"
            paths.append(wfunctions.export_dataset(self.aggregate, directory / f"aggregate{extension}", engine))
        paths.append(self.export_summary(directory))
        return paths


class GeneralizationExperiment(TrainingExperiment):
    """Train on 1, 2 and 3 states, then measure the junk probability of fresh states of the same family."""

    def __init__(self: GeneralizationExperiment, *args: object, **kwargs: object) -> None:
        super().__init__(*args, **kwargs)
        self.test_probabilities: xr.DataArray | None = None

    @staticmethod
    def run_name(size: int, index: int) -> str:
        return f"size{size}_run_{index:02d}"

    def run(self: GeneralizationExperiment) -> dict:
        parameters = self.parameters
        sizes = parameters.training_sizes
        runs = {}
        for size in sizes:
            source = self.source(size)
            for index in range(parameters.runs):
                runs[self.run_name(size, index)] = (source, self.trainer_config(size, index), parameters.drift)
        self.traces = self.train_all(runs)

        layout = self.layout
        tests = {
            name: evaluate_generalization(
                layout, trace.final_angles, trace.family, parameters.test_states, self.test_seed(), parameters.backend
            )
            for name, trace in self.traces.items()
        }
        self.test_probabilities = xr.DataArray(
            np.array([[tests[self.run_name(size, index)] for index in range(parameters.runs)] for size in sizes]),
            dims=(CoordinatesLabels.training_size, CoordinatesLabels.run, CoordinatesLabels.test_state),
            coords={
                CoordinatesLabels.training_size: list(sizes),
                CoordinatesLabels.run: np.arange(parameters.runs),
                CoordinatesLabels.test_state: np.arange(1, parameters.test_states + 1),
            },
            name="test_probability",
            attrs=attributs.test_probability_desc,
        )

        per_size = {}
        for size in sizes:
            values = self.test_probabilities.sel({CoordinatesLabels.training_size: size})
            per_size[str(size)] = {
                "mean": float(values.mean()),
                "std": float(values.std()),
                "run_means": values.mean(CoordinatesLabels.test_state).values.tolist(),
            }
            logger.info(f"{size} training state(s): mean test junk probability {per_size[str(size)]['mean']:.4f}.")
        return {
            "experiment": parameters.experiment.value,
            "seed": parameters.seed,
            "test_states": parameters.test_states,
            "sizes": per_size,
            "runs": [summary.as_dict() for summary in self.summarize(parameters.threshold, tests)],
        }

    def export(self: GeneralizationExperiment, directory: Path) -> list[Path]:
        paths = self.export_traces(directory)
        path = directory / "generalization.csv"
        self.test_probabilities.to_dataframe().reset_index().to_csv(path, index=False)
        paths.append(path)
        paths.append(self.export_summary(directory))
        return paths


class DriftExperiment(TrainingExperiment):
    """
    Three runs sharing one initialization: without drift, and with the scrambler rotating by +step and -step
    every `period` evaluations while the training settings stay fixed.
    """

    CONTROL = "control"
    PLUS = "drift_plus"
    MINUS = "drift_minus"

    def shared_config(self: DriftExperiment) -> TrainerConfig:
        """The trainer config of the three runs, with the initialization written in."""
        config = self.trainer_config(0)
        if config.initial_angles is None:
            angles = initial_parameters(self.layout, config, np.random.default_rng(config.seed)).angles
            config = attrs.evolve(config, initial_angles=angles)
        return config

    def run(self: DriftExperiment) -> dict:
        parameters = self.parameters
        source, config, drift = self.source(), self.shared_config(), parameters.drift
        step = abs(drift.step)
        runs = {
            self.CONTROL: (source, config, attrs.evolve(drift, enabled=False)),
            self.PLUS: (source, config, attrs.evolve(drift, step=step, enabled=True)),
            self.MINUS: (source, config, attrs.evolve(drift, step=-step, enabled=True)),
        }
        self.traces = self.train_all(runs)

        summaries = self.summarize(parameters.threshold)
        details = {
            name: {
                "evaluations_to_threshold": first_evaluation_below(trace, parameters.threshold),
                "subspace_rotation": subspace_angle(source.family, trace.family),
            }
            for name, trace in self.traces.items()
        }
        for summary in summaries:
            logger.info(f"{summary.name}: final cost {summary.final_cost:.4f}, {summary.drift_events} drift event(s).")
        return {
            "experiment": parameters.experiment.value,
            "seed": parameters.seed,
            "threshold": parameters.threshold,
            "initial_angles": list(config.initial_angles),
            "runs": [summary.as_dict() | details[summary.name] for summary in summaries],
        }

    def export(self: DriftExperiment, directory: Path) -> list[Path]:
        paths = self.export_traces(directory)
        length = max(trace.evaluations for trace in self.traces.values())
        curves = pd.DataFrame({name: held_costs(trace, length) for name, trace in self.traces.items()})
        curves.insert(0, CoordinatesLabels.eval_index, np.arange(1, length + 1))
        path = directory / "curves.csv"
        curves.to_csv(path, index=False)
        paths.append(path)
        paths.append(self.export_summary(directory))
        return paths


class SingleTrainingExperiment(TrainingExperiment):
    """One training run of the configured family, followed by a generalization test."""

    NAME = "run_00"

    def run(self: SingleTrainingExperiment) -> dict:
        parameters = self.parameters
        self.traces = self.train_all({self.NAME: (self.source(), self.trainer_config(0), parameters.drift)})
        trace = self.traces[self.NAME]
        test = evaluate_generalization(
            self.layout, trace.final_angles, trace.family, parameters.test_states, self.test_seed(), parameters.backend
        )
        (summary,) = self.summarize(parameters.threshold, {self.NAME: test})
        logger.info(
            f"Final cost {summary.final_cost:.4f} after {summary.evaluations} evaluations, "
            f"mean test junk probability {summary.test_mean:.4f}."
        )
        return {
            "experiment": parameters.experiment.value,
            "seed": parameters.seed,
            "final_angles": trace.final_angles.angles.tolist(),
            "test_probabilities": test.tolist(),
            "runs": [summary.as_dict()],
        }

    def export(self: SingleTrainingExperiment, directory: Path) -> list[Path]:
        return [*self.export_traces(directory), self.export_summary(directory)]
