import io
import json
from pathlib import Path

import pytest

from qautoencoder.configuration.experiment.configuration import ExperimentConfiguration
from qautoencoder.exception.parameter_exception import ConfigurationError
from qautoencoder.standard.labels import BackendLabels, ExperimentLabels


class TestFromDict:
    def test_minimal(self):
        configuration = ExperimentConfiguration.from_dict({"experiment": "train"})
        parameters = configuration.experiment_parameters
        assert parameters.experiment is ExperimentLabels.train
        assert configuration.trainer_parameters.early_stop is None
        assert configuration.environment_parameters.parallel is False

    def test_experiment_argument_wins(self):
        configuration = ExperimentConfiguration.from_dict({"experiment": "train"}, experiment="fig4")
        assert configuration.experiment_parameters.experiment is ExperimentLabels.fig4

    def test_missing_experiment(self):
        with pytest.raises(ConfigurationError, match="must name an experiment"):
            ExperimentConfiguration.from_dict({"seed": 1})

    def test_unknown_key(self):
        with pytest.raises(ConfigurationError, match="Unknown configuration keys"):
            ExperimentConfiguration.from_dict({"experiment": "fig3", "learning": 1})

    def test_experiment_defaults(self):
        fig3 = ExperimentConfiguration.from_dict({"experiment": "fig3"})
        assert fig3.trainer_parameters.early_stop == 0.02
        fig5 = ExperimentConfiguration.from_dict({"experiment": "fig5"})
        assert fig5.trainer_parameters.max_evals == 600

    def test_file_values_replace_defaults(self):
        trainer = {"early_stop": 0.01, "alternate_probes": False}
        configuration = ExperimentConfiguration.from_dict({"experiment": "fig3", "trainer": trainer})
        assert configuration.trainer_parameters.early_stop == 0.01
        assert not configuration.trainer_parameters.alternate_probes

    def test_sections(self):
        configuration = ExperimentConfiguration.from_dict(
            {
                "experiment": "fig5",
                "dims": {"d": 3, "n": 2},
                "family": {"scrambler_angle": 30},
                "backend": "sampled:10000",
                "drift": {"step": 4, "period": 5},
                "environment": {"parallel": True, "n_workers": 2},
            }
        )
        parameters = configuration.experiment_parameters
        assert parameters.dims == (3, 2)
        assert parameters.family.scrambler_angle == 30
        assert parameters.backend.mode is BackendLabels.sampled
        assert parameters.drift.period == 5
        assert configuration.environment_parameters.parallel
        assert configuration.environment_parameters.client.n_workers == 2

    def test_backend_mapping(self):
        configuration = ExperimentConfiguration.from_dict(
            {"experiment": "train", "backend": {"mode": "poisson", "mean_counts": 5000}}
        )
        assert configuration.experiment_parameters.backend.mean_counts == 5000

    @pytest.mark.parametrize(
        "content",
        [
            {"experiment": "fig3", "trainer": [1, 2]},
            {"experiment": "fig3", "dims": {"d": 3}},
            {"experiment": "fig3", "dims": "3x2"},
            {"experiment": "fig3", "backend": 3},
            {"experiment": "fig3", "trainer": {"s_coarse": -1}},
            {"experiment": "fig3", "trainer": {"speed": 1}},
            {"experiment": "fig3", "dims": [3, 3]},
            {"experiment": "fig9"},
        ],
    )
    def test_invalid(self, content):
        with pytest.raises(ConfigurationError):
            ExperimentConfiguration.from_dict(content, source="configuration.yaml")

    def test_error_names_source(self):
        with pytest.raises(ConfigurationError, match="configuration.yaml"):
            ExperimentConfiguration.from_dict({"experiment": "fig3", "runs": 0}, source="configuration.yaml")


class TestParse:
    def test_file(self, write_configuration):
        path = write_configuration({"experiment": "fig3", "seed": 7, "runs": 3})
        configuration = ExperimentConfiguration.parse(path)
        assert configuration.experiment_parameters.seed == 7
        assert configuration.experiment_parameters.runs == 3

    def test_stream(self):
        configuration = ExperimentConfiguration.parse(io.StringIO("experiment: decode-check\nsamples: 10\n"))
        assert configuration.experiment_parameters.samples == 10

    def test_empty_file_with_experiment(self, write_configuration):
        path = write_configuration(None)
        configuration = ExperimentConfiguration.parse(path, experiment="train")
        assert configuration.experiment_parameters.experiment is ExperimentLabels.train

    def test_invalid_yaml(self, tmp_path):
        path = tmp_path / "broken.yaml"
        path.write_text("experiment: [fig3\n", encoding="utf-8")
        with pytest.raises(ConfigurationError, match="Invalid YAML"):
            ExperimentConfiguration.parse(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(OSError):
            ExperimentConfiguration.parse(tmp_path / "missing.yaml")


class TestOverrides:
    def test_command_line_values(self, tmp_path):
        configuration = ExperimentConfiguration.from_dict({"experiment": "train", "seed": 1})
        overridden = configuration.with_overrides(seed=5, output=tmp_path, backend="sampled:100", dims=(3, 2))
        parameters = overridden.experiment_parameters
        assert parameters.seed == 5
        assert overridden.output_directory == tmp_path
        assert parameters.backend.shots_per_state == 100
        assert configuration.experiment_parameters.seed == 1

    def test_invalid_override(self):
        configuration = ExperimentConfiguration.from_dict({"experiment": "train"})
        with pytest.raises(ConfigurationError):
            configuration.with_overrides(dims=(4, 2))
        with pytest.raises(ConfigurationError):
            configuration.with_overrides(backend="photons:3")


class TestOutputDirectory:
    def test_default(self, monkeypatch):
        monkeypatch.delenv("QAE_OUTPUT_ROOT", raising=False)
        configuration = ExperimentConfiguration.from_dict({"experiment": "fig4"})
        assert configuration.output_directory == Path("results") / "fig4"

    def test_environment_variable(self, monkeypatch, tmp_path):
        monkeypatch.setenv("QAE_OUTPUT_ROOT", str(tmp_path))
        configuration = ExperimentConfiguration.from_dict({"experiment": "verify-unitaries"})
        assert configuration.output_directory == tmp_path / "verify-unitaries"


class TestAsDict:
    def test_json_serializable(self, tmp_path):
        configuration = ExperimentConfiguration.from_dict(
            {"experiment": "fig5", "backend": "poisson:500", "output": {"directory": str(tmp_path)}}
        )
        content = json.loads(json.dumps(configuration.as_dict()))
        assert content["experiment"] == "fig5"
        assert content["dims"] == [3, 2]
        assert content["backend"]["mode"] == "poisson"
        assert content["trainer"]["max_evals"] == 600
        assert content["output"]["directory"] == str(tmp_path)
        assert "client" not in content["environment"]["client"]

    def test_reparse(self):
        configuration = ExperimentConfiguration.from_dict({"experiment": "fig3", "seed": 3})
        content = configuration.as_dict()
        content.pop("environment")
        content["output"].pop("directory")
        reparsed = ExperimentConfiguration.from_dict(content)
        assert reparsed.experiment_parameters.trainer == configuration.experiment_parameters.trainer
        assert reparsed.experiment_parameters.family == configuration.experiment_parameters.family
