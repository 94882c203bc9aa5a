"""Store all labels used by the autoencoder simulator."""

from __future__ import annotations

from enum import StrEnum


class CoordinatesLabels(StrEnum):
    """A single place to store the dimension names of traces and aggregates."""

    eval_index = "eval_index"
    parameter = "parameter"
    run = "run"
    test_state = "test_state"
    training_size = "training_size"


class PlateLabels(StrEnum):
    """Kinds of wave plates known by the optics model."""

    half = "half"
    quarter = "quarter"
    retarder = "retarder"


class FamilyLabels(StrEnum):
    """The ways a compressible family can be generated."""

    physical = "physical"
    haar = "haar"


class BackendLabels(StrEnum):
    """Measurement backends estimating the junk mode occupation."""

    exact = "exact"
    sampled = "sampled"
    poisson = "poisson"


class PhaseLabels(StrEnum):
    """The phase of a training record."""

    init = "init"
    probe = "probe"
    move = "move"

    def tag(self: PhaseLabels, param_index: int | None = None) -> str:
        """Return the serialized phase, e.g. 'probe:2' (1-based parameter label)."""
        if self is PhaseLabels.probe:
            return f"{self.value}:{param_index + 1}"
        return self.value


class EventLabels(StrEnum):
    """Events attached to a training record."""

    kick = "kick"
    drift = "drift"
    phase_switch = "phase_switch"


class ExperimentLabels(StrEnum):
    """The experiments the command line knows how to run."""

    fig3 = "fig3"
    fig4 = "fig4"
    fig5 = "fig5"
    train = "train"
    verify_unitaries = "verify-unitaries"
    decode_check = "decode-check"


class TraceLabels(StrEnum):
    """Variable and column names of an exported training trace."""

    eval_index = "eval_index"
    iteration = "iteration"
    phase = "phase"
    cost = "cost"
    angles = "angles"
    events = "events"
    mean = "mean"
    std = "std"
    lower = "lower"
    upper = "upper"

    @staticmethod
    def angle_column(param_index: int) -> str:
        """Column name of a parameter angle, 1-based as in the reports."""
        return f"angle_{param_index + 1}"


class ConfigurationLabels(StrEnum):
    """Top level keys and sections of an experiment configuration file."""

    experiment = "experiment"
    seed = "seed"
    runs = "runs"
    training_states = "training_states"
    test_states = "test_states"
    threshold = "threshold"
    matrix_file = "matrix_file"
    samples = "samples"
    training_sizes = "training_sizes"
    dims = "dims"
    family = "family"
    trainer = "trainer"
    backend = "backend"
    drift = "drift"
    output = "output"
    environment = "environment"
    output_root_variable = "QAE_OUTPUT_ROOT"


class OutputLabels(StrEnum):
    """Keys of the output section and names of the files written by an experiment."""

    directory = "directory"
    dataset_engine = "dataset_engine"
    manifest = "manifest.json"
    summary = "summary.json"
    aggregate = "aggregate.csv"
    report = "report.json"
    unitaries = "unitaries.txt"

    @staticmethod
    def trace(name: str) -> str:
        """File name of the trace of a run."""
        return f"trace_{name}.csv"
