"""
The learning loop of the autoencoder.

Each iteration probes the cost once at the current angles and once per rotated plate, then moves the angles against
the estimated gradient. The step size is coarse until a measured cost first drops under the fine threshold. When the
cost stays above that threshold for `stuck_window` iterations every plate is kicked instead of moved. A drift schedule
may rotate the scrambler of the preparation between two evaluations, the training states being prepared again from
their fixed settings.

Notes
-----
Every cost function evaluation produces exactly one record, so `eval_index` of a record is the number of
evaluations done so far.

"""

from __future__ import annotations

import abc
from typing import TYPE_CHECKING, Iterable

import numpy as np
import pandas as pd
import xarray as xr
from attrs import Attribute, field, frozen, validators

from qautoencoder.configuration.parameters.parameter_drift import DriftSchedule
from qautoencoder.configuration.parameters.parameter_measurement import MeasurementBackend
from qautoencoder.exception.parameter_exception import ParameterLengthError
from qautoencoder.function.autoencoder.compression import TrainingSet
from qautoencoder.function.optics.mesh import MeshLayout, ParameterVector
from qautoencoder.function.optics.preparation import PreparationFamily, PrepSetting, drift_family, prepare_state
from qautoencoder.function.trainer.gradient import movement, secant_gradient
from qautoencoder.function.trainer.measurement import CostMeter
from qautoencoder.logging.custom_logger import logger
from qautoencoder.standard import attributs
from qautoencoder.standard.labels import CoordinatesLabels, EventLabels, PhaseLabels, TraceLabels

if TYPE_CHECKING:
    from qautoencoder.configuration.parameters.parameter_trainer import TrainerConfig
    from qautoencoder.standard.types import QaeTrace


# --- Training sources --- #


class TrainingSource(abc.ABC):
    """Where the training states come from. Drifting a source returns a new one."""

    @abc.abstractmethod
    def training_set(self: TrainingSource) -> TrainingSet:
        """The states the cost is currently averaged over."""

    @abc.abstractmethod
    def drift(self: TrainingSource, delta: float) -> TrainingSource:
        """The source after a rotation of the scrambler by `delta` degrees."""

    @abc.abstractmethod
    def preparation(self: TrainingSource) -> PreparationFamily | None:
        """The family producing the states, None if the states are given as is."""


@frozen(kw_only=True)
class StaticTrainingSource(TrainingSource):
    """A fixed set of states. There is nothing to drift."""

    states: TrainingSet = field(validator=validators.instance_of(TrainingSet))

    def training_set(self: StaticTrainingSource) -> TrainingSet:
        return self.states

    def drift(self: StaticTrainingSource, delta: float) -> StaticTrainingSource:  # noqa: ARG002
        return self

    def preparation(self: StaticTrainingSource) -> None:
        return None


@frozen(kw_only=True)
class PreparedTrainingSource(TrainingSource):
    """States prepared by a family from fixed preparation settings."""

    family: PreparationFamily = field(validator=validators.instance_of(PreparationFamily))
    settings: tuple[PrepSetting, ...] = field(converter=tuple)
    _states: TrainingSet = field(init=False, default=None)

    @settings.validator
    def _settings_not_empty(self: PreparedTrainingSource, attribute: Attribute, value: tuple[PrepSetting, ...]) -> None:
        if len(value) == 0:
            msg = f"Parameter {attribute.name} must hold at least one preparation setting."
            raise ValueError(msg)

    def __attrs_post_init__(self: PreparedTrainingSource) -> None:
        """Prepare the states once, the source being immutable."""
        states = [prepare_state(self.family, setting) for setting in self.settings]
        object.__setattr__(self, "_states", TrainingSet(states=states, keep=self.family.keep))

    def training_set(self: PreparedTrainingSource) -> TrainingSet:
        return self._states

    def drift(self: PreparedTrainingSource, delta: float) -> PreparedTrainingSource:
        return PreparedTrainingSource(family=drift_family(self.family, delta), settings=self.settings)

    def preparation(self: PreparedTrainingSource) -> PreparationFamily:
        return self.family


# --- Trace --- #


def _events(values: Iterable[EventLabels | str]) -> frozenset[EventLabels]:
    return frozenset(EventLabels(value) for value in values)


@frozen(kw_only=True)
class TrainingRecord:
    """One cost function evaluation."""

    eval_index: int = field(converter=int, validator=validators.ge(1))
    iteration: int = field(converter=int, validator=validators.ge(0))
    phase: str = field(converter=str, metadata={"description": "init, probe:k or move."})
    angles: ParameterVector = field(validator=validators.instance_of(ParameterVector))
    cost: float = field(converter=float, validator=[validators.ge(0.0), validators.le(1.0)])
    events: frozenset[EventLabels] = field(factory=frozenset, converter=_events)

    @property
    def events_token(self: TrainingRecord) -> str:
        """Events joined by semicolons, in a fixed order."""
        return ";".join(event.value for event in EventLabels if event in self.events)


@frozen(kw_only=True)
class TrainingTrace:
    """Every evaluation of a training run and the angles it ended with."""

    records: tuple[TrainingRecord, ...] = field(converter=tuple)
    final_index: int = field(
        converter=int, metadata={"description": "Index of the record whose angles are the result of the run."}
    )
    seed: int | None = field(default=None)
    family: PreparationFamily | None = field(
        default=None, metadata={"description": "The preparation family at the end of the run (drifted if any)."}
    )

    @records.validator
    def _strictly_increasing(self: TrainingTrace, attribute: Attribute, value: tuple[TrainingRecord, ...]) -> None:
        if len(value) == 0:
            msg = f"Parameter {attribute.name} must hold at least one record."
            raise ValueError(msg)
        indices = np.array([record.eval_index for record in value])
        if np.any(np.diff(indices) <= 0):
            msg = f"Parameter {attribute.name} must have strictly increasing eval_index."
            raise ValueError(msg)

    @final_index.validator
    def _final_index_in_range(self: TrainingTrace, attribute: Attribute, value: int) -> None:
        if not 0 <= value < len(self.records):
            msg = f"Parameter {attribute.name} ({value}) does not point to a record."
            raise ValueError(msg)

    def __len__(self: TrainingTrace) -> int:
        return len(self.records)

    @property
    def costs(self: TrainingTrace) -> np.ndarray:
        return np.array([record.cost for record in self.records])

    @property
    def eval_indices(self: TrainingTrace) -> np.ndarray:
        return np.array([record.eval_index for record in self.records])

    @property
    def evaluations(self: TrainingTrace) -> int:
        """Number of cost function evaluations used by the run."""
        return self.records[-1].eval_index

    @property
    def final_record(self: TrainingTrace) -> TrainingRecord:
        return self.records[self.final_index]

    @property
    def final_angles(self: TrainingTrace) -> ParameterVector:
        return self.final_record.angles

    @property
    def final_cost(self: TrainingTrace) -> float:
        return self.final_record.cost

    @property
    def best_cost(self: TrainingTrace) -> float:
        return float(self.costs.min())

    def converged(self: TrainingTrace, threshold: float) -> bool:
        """True if some measured cost is lower or equal to `threshold`."""
        return bool(np.any(self.costs <= threshold))

    def with_event(self: TrainingTrace, event: EventLabels) -> list[TrainingRecord]:
        """The records carrying `event`."""
        return [record for record in self.records if event in record.events]

    def count(self: TrainingTrace, event: EventLabels) -> int:
        return len(self.with_event(event))

    def to_dataframe(self: TrainingTrace) -> pd.DataFrame:
        """One row per record: eval_index, iteration, phase, cost, one column per angle and events."""
        angles = np.stack([record.angles.angles for record in self.records])
        frame = pd.DataFrame(
            {
                TraceLabels.eval_index: self.eval_indices,
                TraceLabels.iteration: [record.iteration for record in self.records],
                TraceLabels.phase: [record.phase for record in self.records],
                TraceLabels.cost: self.costs,
            }
        )
        for index in range(angles.shape[1]):
            frame[TraceLabels.angle_column(index)] = angles[:, index]
        frame[TraceLabels.events] = [record.events_token for record in self.records]
        return frame

    def to_dataset(self: TrainingTrace) -> QaeTrace:
        """The trace as a xarray.Dataset indexed by evaluation and parameter."""
        angles = np.stack([record.angles.angles for record in self.records])
        eval_dim, param_dim = CoordinatesLabels.eval_index, CoordinatesLabels.parameter
        attrs = {"final_index": self.final_index}
        if self.seed is not None:
            attrs["seed"] = int(self.seed)
        return xr.Dataset(
            {
                TraceLabels.cost: (eval_dim, self.costs, attributs.cost_desc),
                TraceLabels.iteration: (
                    eval_dim,
                    np.array([record.iteration for record in self.records]),
                    attributs.iteration_desc,
                ),
                TraceLabels.phase: (
                    eval_dim,
                    np.array([record.phase for record in self.records], dtype=str),
                    attributs.phase_desc,
                ),
                TraceLabels.events: (
                    eval_dim,
                    np.array([record.events_token for record in self.records], dtype=str),
                    attributs.events_desc,
                ),
                TraceLabels.angles: ((eval_dim, param_dim), angles, attributs.angles_desc),
            },
            coords={
                eval_dim: (eval_dim, self.eval_indices, attributs.eval_index_desc),
                param_dim: (param_dim, np.arange(1, angles.shape[1] + 1), attributs.parameter_desc),
            },
            attrs=attrs,
        )


# --- Training loop --- #


class _TrainingRun:
    """Mutable state of a single run. The evaluation counter and the drift are causal, so a run is sequential."""

    def __init__(
        self: _TrainingRun,
        source: TrainingSource,
        config: TrainerConfig,
        drift: DriftSchedule,
        meter: CostMeter,
    ) -> None:
        self.source = source
        self.config = config
        self.drift = drift
        self.meter = meter
        self.records: list[TrainingRecord] = []
        self.fine = False

    def measure(
        self: _TrainingRun,
        iteration: int,
        phase: str,
        parameters: ParameterVector,
        events: Iterable[EventLabels] = (),
    ) -> TrainingRecord:
        """Evaluate the cost once, switch the step size and drift the source if needed."""
        cost = self.meter(parameters, self.source.training_set())
        events = set(events)
        if not self.fine and cost < self.config.fine_threshold:
            self.fine = True
            events.add(EventLabels.phase_switch)
            logger.debug(f"Evaluation {self.meter.evaluations}: cost {cost:.4f}, switching to the fine step.")
        if self.drift.is_due(self.meter.evaluations):
            self.source = self.source.drift(self.drift.step)
            events.add(EventLabels.drift)
        record = TrainingRecord(
            eval_index=self.meter.evaluations,
            iteration=iteration,
            phase=phase,
            angles=parameters,
            cost=cost,
            events=events,
        )
        self.records.append(record)
        return record

    def must_stop(self: _TrainingRun, record: TrainingRecord) -> bool:
        early_stop = self.config.early_stop
        if early_stop is not None and record.cost <= early_stop:
            return True
        return self.meter.evaluations >= self.config.max_evals

    def is_low(self: _TrainingRun, record: TrainingRecord) -> bool:
        return record.cost < self.config.fine_threshold

    def run(self: _TrainingRun, parameters: ParameterVector) -> int:
        """Train from `parameters`. Return the index of the record holding the final angles."""
        iteration = 0
        base = self.measure(iteration, PhaseLabels.init.tag(), parameters)
        base_index = len(self.records) - 1
        stuck = 0
        while not self.must_stop(base):
            step = self.config.step_size(fine=self.fine)
            direction = self.config.probe_direction(iteration)
            low = self.is_low(base)
            probe_costs = []
            for index in range(len(parameters)):
                probed = parameters.rotate(index, direction * step)
                probe = self.measure(iteration, PhaseLabels.probe.tag(index), probed)
                low = low or self.is_low(probe)
                if self.must_stop(probe):
                    early = self.config.early_stop is not None and probe.cost <= self.config.early_stop
                    return len(self.records) - 1 if early else base_index
                probe_costs.append(probe.cost)

            stuck = 0 if low else stuck + 1
            if stuck >= self.config.stuck_window:
                logger.debug(f"No cost under {self.config.fine_threshold} for {stuck} iterations: kicking the plates.")
                parameters = parameters.shift(self.config.kick)
                events = (EventLabels.kick,)
                stuck = 0
            else:
                gradient = secant_gradient(base.cost, np.array(probe_costs), step, direction)
                parameters = parameters.shift(movement(gradient, step, self.config.learning_rate))
                events = ()

            iteration += 1
            base = self.measure(iteration, PhaseLabels.move.tag(), parameters, events)
            base_index = len(self.records) - 1
        return base_index


def initial_parameters(layout: MeshLayout, config: TrainerConfig, rng: np.random.Generator) -> ParameterVector:
    """
    The configured starting angles, or angles drawn uniformly in [0, 360).

    The draw always happens so that the rest of the stream does not depend on the initialization.
    """
    drawn = layout.random_parameters(rng)
    if config.initial_angles is None:
        return drawn
    if len(config.initial_angles) != layout.param_count:
        raise ParameterLengthError(layout.param_count, len(config.initial_angles))
    return ParameterVector(config.initial_angles)


def train(
    layout: MeshLayout,
    source: TrainingSource | TrainingSet,
    config: TrainerConfig,
    drift: DriftSchedule | None = None,
    backend: MeasurementBackend | None = None,
) -> TrainingTrace:
    """
    Train the mesh angles on the states of `source`.

    Parameters
    ----------
    layout : MeshLayout
        The mesh being trained.
    source : TrainingSource | TrainingSet
        The training states. A plain TrainingSet is a static source.
    config : TrainerConfig
        Step sizes, thresholds, budget and seed. The seed drives both the initialization and the measurement noise.
    drift : DriftSchedule | None
        Drift of the preparation family. Disabled if None.
    backend : MeasurementBackend | None
        Measurement model. Exact if None.

    Returns
    -------
    TrainingTrace
        Every evaluation of the run. Non convergence is not an error, it shows in the trace.

    """
    drift = DriftSchedule() if drift is None else drift
    backend = MeasurementBackend() if backend is None else backend
    if isinstance(source, TrainingSet):
        source = StaticTrainingSource(states=source)
    if source.training_set().dim != layout.dim or source.training_set().keep != layout.keep:
        msg = (
            f"The training states (d={source.training_set().dim}, n={source.training_set().keep}) do not match the "
            f"mesh (d={layout.dim}, n={layout.keep})."
        )
        raise ValueError(msg)
    if drift.enabled and source.preparation() is None:
        logger.warning("Drift is enabled but the training states are static: drift events leave them unchanged.")

    rng = np.random.default_rng(config.seed)
    parameters = initial_parameters(layout, config, rng)
    training_run = _TrainingRun(source, config, drift, CostMeter(backend, layout, rng))
    final_index = training_run.run(parameters)
    trace = TrainingTrace(
        records=training_run.records,
        final_index=final_index,
        seed=config.seed,
        family=training_run.source.preparation(),
    )
    logger.debug(
        f"Training stopped after {trace.evaluations} evaluations with cost {trace.final_cost:.4f} "
        f"({trace.count(EventLabels.kick)} kick(s), {trace.count(EventLabels.drift)} drift event(s))."
    )
    return trace
