import json

import numpy as np
import pandas as pd
import pytest

from qautoencoder.configuration.experiment.configuration import ExperimentConfiguration
from qautoencoder.configuration.parameters.parameter_trainer import TrainerConfig
from qautoencoder.function.trainer.training import train
from qautoencoder.model import (
    ConvergenceExperiment,
    DriftExperiment,
    GeneralizationExperiment,
    SingleTrainingExperiment,
    experiment_from_configuration,
)
from qautoencoder.model.training_experiments import first_evaluation_below


def configuration_for(experiment, directory, **content):
    content.setdefault("output", {})["directory"] = str(directory)
    return ExperimentConfiguration.from_dict({"experiment": experiment, "seed": 11, **content})


class TestConvergenceExperiment:
    def test_execute(self, tmp_path, quick_trainer):
        configuration = configuration_for("fig3", tmp_path, runs=3, trainer=quick_trainer)
        experiment = experiment_from_configuration(configuration)
        assert isinstance(experiment, ConvergenceExperiment)
        summary = experiment.execute()

        assert len(summary["runs"]) == 3
        assert summary["threshold"] == 0.02
        assert 0 <= summary["converged_fraction"] <= 1
        assert experiment.aggregate["mean"].size == 30
        for name in ("trace_run_00.csv", "trace_run_01.csv", "trace_run_02.csv", "aggregate.csv", "summary.json"):
            assert (tmp_path / name).is_file()
        manifest = json.loads((tmp_path / "manifest.json").read_text())
        assert manifest["seed"] == 11
        assert manifest["configuration"]["trainer"]["early_stop"] == 0.02
        assert "summary.json" in manifest["artifacts"]

    def test_reproducible(self, tmp_path, quick_trainer):
        first = configuration_for("fig3", tmp_path / "first", runs=2, trainer=quick_trainer)
        second = configuration_for("fig3", tmp_path / "second", runs=2, trainer=quick_trainer)
        ConvergenceExperiment(first).execute()
        ConvergenceExperiment(second).execute()
        for name in ("trace_run_00.csv", "trace_run_01.csv", "aggregate.csv", "summary.json"):
            assert (tmp_path / "first" / name).read_bytes() == (tmp_path / "second" / name).read_bytes()

    def test_run_prefix_independent_of_run_count(self, tmp_path, quick_trainer):
        small = ConvergenceExperiment(configuration_for("fig3", tmp_path / "small", runs=1, trainer=quick_trainer))
        large = ConvergenceExperiment(configuration_for("fig3", tmp_path / "large", runs=3, trainer=quick_trainer))
        small.run()
        large.run()
        assert small.traces["run_00"] == large.traces["run_00"]

    def test_dataset_export(self, tmp_path, quick_trainer):
        configuration = ExperimentConfiguration.from_dict(
            {
                "experiment": "fig3",
                "runs": 2,
                "trainer": quick_trainer,
                "output": {"directory": str(tmp_path), "dataset_engine": "netcdf4"},
            }
        )
        ConvergenceExperiment(configuration).execute()
        assert (tmp_path / "trace_run_00.nc").is_file()
        assert (tmp_path / "aggregate.nc").is_file()


class TestGeneralizationExperiment:
    def test_execute(self, tmp_path):
        configuration = configuration_for(
            "fig4", tmp_path, runs=2, training_sizes=[1, 2], test_states=4, trainer={"max_evals": 20}
        )
        experiment = experiment_from_configuration(configuration)
        assert isinstance(experiment, GeneralizationExperiment)
        summary = experiment.execute()
        assert experiment.test_probabilities.shape == (2, 2, 4)
        assert set(summary["sizes"]) == {"1", "2"}
        assert len(summary["runs"]) == 4
        assert all(run["test_mean"] is not None for run in summary["runs"])
        frame = pd.read_csv(tmp_path / "generalization.csv")
        assert len(frame) == 16

    def test_training_sets_are_prefixes(self, tmp_path):
        experiment = GeneralizationExperiment(configuration_for("fig4", tmp_path))
        assert experiment.source(3).settings[:2] == experiment.source(2).settings
        assert experiment.source(1).family == experiment.source(3).family


class TestDriftExperiment:
    def test_execute(self, tmp_path):
        configuration = configuration_for("fig5", tmp_path, trainer={"max_evals": 40})
        experiment = experiment_from_configuration(configuration)
        assert isinstance(experiment, DriftExperiment)
        summary = experiment.execute()

        runs = {run["name"]: run for run in summary["runs"]}
        assert set(runs) == {"control", "drift_plus", "drift_minus"}
        assert runs["control"]["drift_events"] == 0
        assert runs["drift_plus"]["drift_events"] == runs["drift_minus"]["drift_events"] > 0
        assert runs["control"]["subspace_rotation"] == pytest.approx(0, abs=1e-5)
        assert len(summary["initial_angles"]) == 4

        starts = [trace.records[0].angles for trace in experiment.traces.values()]
        assert starts[0] == starts[1] == starts[2]
        curves = pd.read_csv(tmp_path / "curves.csv")
        assert list(curves.columns) == ["eval_index", "control", "drift_plus", "drift_minus"]

    def test_control_matches_plain_run(self, tmp_path):
        experiment = DriftExperiment(configuration_for("fig5", tmp_path, trainer={"max_evals": 40}))
        experiment.run()
        config = experiment.shared_config()
        plain = train(experiment.layout, experiment.source(), config, backend=experiment.parameters.backend)
        assert experiment.traces["control"] == plain


class TestSingleTrainingExperiment:
    def test_execute(self, tmp_path):
        configuration = configuration_for("train", tmp_path, trainer={"max_evals": 20}, test_states=5)
        experiment = experiment_from_configuration(configuration)
        assert isinstance(experiment, SingleTrainingExperiment)
        summary = experiment.execute()
        assert len(summary["final_angles"]) == 4
        assert len(summary["test_probabilities"]) == 5
        assert (tmp_path / "trace_run_00.csv").is_file()


class TestHelpers:
    def test_first_evaluation_below(self, layout_3_2, physical_source):
        trace = train(layout_3_2, physical_source, TrainerConfig(max_evals=10, seed=0))
        assert first_evaluation_below(trace, 1.0) == 1
        assert first_evaluation_below(trace, -1.0) is None

    def test_map_runs_keeps_order(self, tmp_path):
        experiment = SingleTrainingExperiment(configuration_for("train", tmp_path))
        assert experiment.map_runs(np.add, [(1, 2), (3, 4), (5, 6)]) == [3, 7, 11]

    def test_summary_before_run(self, tmp_path):
        experiment = SingleTrainingExperiment(configuration_for("train", tmp_path))
        with pytest.raises(ValueError, match="not been run"):
            experiment.export_summary(tmp_path)
