"""
The configuration of an experiment, read from a YAML file.

Example:
-------
```yaml
experiment: fig3
seed: 7
runs: 20
training_states: 2
dims: {d: 3, n: 2}
family: {generation: physical, scrambler_angle: 30}
trainer: {s_coarse: 12, s_fine: 5, early_stop: 0.02, max_evals: 200}
backend: sampled:10000
drift: {step: 4, period: 5, enabled: false}
output: {directory: results/fig3, dataset_engine: netcdf4}
environment: {parallel: true, n_workers: 4}
```

"""

from __future__ import annotations

import os
from enum import Enum
from pathlib import Path
from typing import IO, Any

import attrs
import numpy as np
import yaml

from qautoencoder.configuration.base_configuration import BaseConfiguration
from qautoencoder.configuration.experiment.parameter import (
    EXPERIMENT_TRAINER_DEFAULTS,
    ExperimentParameters,
    OutputParameter,
)
from qautoencoder.configuration.parameters.parameter_drift import DriftSchedule
from qautoencoder.configuration.parameters.parameter_environment import ClientParameter, EnvironmentParameter
from qautoencoder.configuration.parameters.parameter_family import FamilyParameter
from qautoencoder.configuration.parameters.parameter_measurement import MeasurementBackend
from qautoencoder.configuration.parameters.parameter_trainer import TrainerConfig
from qautoencoder.exception.parameter_exception import ConfigurationError
from qautoencoder.standard.labels import ConfigurationLabels, ExperimentLabels, OutputLabels

_SECTIONS = {
    ConfigurationLabels.family: FamilyParameter,
    ConfigurationLabels.drift: DriftSchedule,
    ConfigurationLabels.output: OutputParameter,
}
_SCALARS = (
    ConfigurationLabels.experiment,
    ConfigurationLabels.seed,
    ConfigurationLabels.runs,
    ConfigurationLabels.training_states,
    ConfigurationLabels.training_sizes,
    ConfigurationLabels.test_states,
    ConfigurationLabels.threshold,
    ConfigurationLabels.samples,
    ConfigurationLabels.matrix_file,
)
_KNOWN_KEYS = {
    *_SCALARS,
    *_SECTIONS,
    ConfigurationLabels.trainer,
    ConfigurationLabels.dims,
    ConfigurationLabels.backend,
    ConfigurationLabels.environment,
}


def _section(mapping: dict, key: str, source: str | Path | None) -> dict:
    value = mapping.get(key)
    if value is None:
        return {}
    if not isinstance(value, dict):
        msg = f"Section '{key}' must be a mapping, got {type(value).__name__}."
        raise ConfigurationError(msg, source)
    return value


def _parse_dims(value: Any, source: str | Path | None) -> tuple[int, int]:  # noqa: ANN401
    if isinstance(value, dict):
        if set(value) != {"d", "n"}:
            msg = f"Section 'dims' must have exactly the keys 'd' and 'n'. Got {sorted(value)}."
            raise ConfigurationError(msg, source)
        return value["d"], value["n"]
    if isinstance(value, list | tuple):
        return tuple(value)
    msg = f"Section 'dims' must be a mapping {{d, n}} or a [d, n] list. Got {value!r}."
    raise ConfigurationError(msg, source)


def _parse_backend(value: Any, source: str | Path | None) -> MeasurementBackend:  # noqa: ANN401
    if isinstance(value, str):
        return MeasurementBackend.parse(value)
    if isinstance(value, dict):
        return MeasurementBackend(**value)
    msg = f"Section 'backend' must be a string such as 'sampled:10000' or a mapping. Got {value!r}."
    raise ConfigurationError(msg, source)


def _parse_environment(value: dict) -> EnvironmentParameter:
    value = dict(value)
    parallel = value.pop("parallel", False)
    return EnvironmentParameter(client=ClientParameter(**value), parallel=parallel)


def _serialize(instance: Any, attribute: attrs.Attribute, value: Any) -> Any:  # noqa: ANN401, ARG001
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, Path):
        return str(value)
    if isinstance(value, tuple):
        return list(value)
    if isinstance(value, np.integer | np.floating):
        return value.item()
    return value


class ExperimentConfiguration(BaseConfiguration):
    """Configuration of an experiment of the command line."""

    def __init__(self: ExperimentConfiguration, parameters: ExperimentParameters) -> None:
        """Create an ExperimentConfiguration object."""
        self._parameters = parameters

    @property
    def experiment_parameters(self: ExperimentConfiguration) -> ExperimentParameters:
        return self._parameters

    @property
    def environment_parameters(self: ExperimentConfiguration) -> EnvironmentParameter:
        return self._parameters.environment

    @property
    def trainer_parameters(self: ExperimentConfiguration) -> TrainerConfig:
        return self._parameters.trainer

    @property
    def output_directory(self: ExperimentConfiguration) -> Path:
        """The configured directory, else $QAE_OUTPUT_ROOT/<experiment>, else ./results/<experiment>."""
        if self._parameters.output.directory is not None:
            return self._parameters.output.directory
        root = os.environ.get(ConfigurationLabels.output_root_variable, "results")
        return Path(root) / self._parameters.experiment.value

    @classmethod
    def from_dict(
        cls: type[ExperimentConfiguration],
        mapping: dict,
        source: str | Path | None = None,
        experiment: str | None = None,
    ) -> ExperimentConfiguration:
        """Build the configuration from the content of a configuration file. `experiment` replaces the file value."""
        if not isinstance(mapping, dict):
            msg = f"A configuration must be a mapping, got {type(mapping).__name__}."
            raise ConfigurationError(msg, source)
        if experiment is not None:
            mapping = {**mapping, ConfigurationLabels.experiment.value: experiment}
        unknown = set(mapping) - {str(key) for key in _KNOWN_KEYS}
        if unknown:
            msg = f"Unknown configuration keys: {sorted(unknown)}."
            raise ConfigurationError(msg, source)
        if ConfigurationLabels.experiment not in mapping:
            msg = f"The configuration must name an experiment among {[label.value for label in ExperimentLabels]}."
            raise ConfigurationError(msg, source)
        try:
            kwargs = {str(key): mapping[key] for key in _SCALARS if key in mapping}
            kwargs |= {str(key): section(**_section(mapping, key, source)) for key, section in _SECTIONS.items()}
            experiment_label = ExperimentLabels(mapping[ConfigurationLabels.experiment])
            trainer_defaults = EXPERIMENT_TRAINER_DEFAULTS.get(experiment_label, {})
            kwargs[ConfigurationLabels.trainer.value] = TrainerConfig(
                **(trainer_defaults | _section(mapping, ConfigurationLabels.trainer, source))
            )
            if ConfigurationLabels.dims in mapping:
                kwargs[ConfigurationLabels.dims.value] = _parse_dims(mapping[ConfigurationLabels.dims], source)
            if mapping.get(ConfigurationLabels.backend) is not None:
                kwargs[ConfigurationLabels.backend.value] = _parse_backend(mapping[ConfigurationLabels.backend], source)
            kwargs[ConfigurationLabels.environment.value] = _parse_environment(
                _section(mapping, ConfigurationLabels.environment, source)
            )
            return cls(ExperimentParameters(**kwargs))
        except ConfigurationError as e:
            if e.source is None and source is not None:
                raise ConfigurationError(e.reason, source) from e
            raise
        except (TypeError, ValueError) as e:
            raise ConfigurationError(str(e), source) from e

    @classmethod
    def parse(
        cls: type[ExperimentConfiguration], configuration_file: str | Path | IO, experiment: str | None = None
    ) -> ExperimentConfiguration:
        """Parse a YAML configuration file. A missing file raises OSError, an invalid one ConfigurationError."""
        if isinstance(configuration_file, str | Path):
            source = Path(configuration_file)
            with source.open(encoding="utf-8") as stream:
                return cls.parse_stream(stream, source, experiment)
        return cls.parse_stream(configuration_file, getattr(configuration_file, "name", None), experiment)

    @classmethod
    def parse_stream(
        cls: type[ExperimentConfiguration], stream: IO, source: str | Path | None = None, experiment: str | None = None
    ) -> ExperimentConfiguration:
        try:
            content = yaml.safe_load(stream)
        except yaml.YAMLError as e:
            msg = f"Invalid YAML: {e}"
            raise ConfigurationError(msg, source) from e
        return cls.from_dict(content if content is not None else {}, source, experiment)

    def with_overrides(
        self: ExperimentConfiguration,
        *,
        experiment: str | None = None,
        seed: int | None = None,
        output: str | Path | None = None,
        backend: str | None = None,
        dims: tuple[int, int] | None = None,
    ) -> ExperimentConfiguration:
        """A copy where the command line values replace the ones of the file."""
        changes = {}
        if experiment is not None:
            changes[ConfigurationLabels.experiment.value] = experiment
        if seed is not None:
            changes[ConfigurationLabels.seed.value] = seed
        if output is not None:
            changes[ConfigurationLabels.output.value] = attrs.evolve(self._parameters.output, directory=output)
        if backend is not None:
            changes[ConfigurationLabels.backend.value] = MeasurementBackend.parse(backend)
        if dims is not None:
            changes[ConfigurationLabels.dims.value] = dims
        try:
            return ExperimentConfiguration(attrs.evolve(self._parameters, **changes))
        except (TypeError, ValueError) as e:
            if isinstance(e, ConfigurationError):
                raise
            raise ConfigurationError(str(e)) from e

    def as_dict(self: ExperimentConfiguration) -> dict:
        """A JSON serializable view of the parameters, as stored in the manifest."""
        content = attrs.asdict(
            self._parameters,
            filter=lambda attribute, _: attribute.init,
            value_serializer=_serialize,
        )
        content[ConfigurationLabels.output.value][OutputLabels.directory.value] = str(self.output_directory)
        return content
