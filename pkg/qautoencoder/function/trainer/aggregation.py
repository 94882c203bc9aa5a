"""Statistics over the cost curves of several training runs."""

from __future__ import annotations

from typing import TYPE_CHECKING, Sequence

import numpy as np
import xarray as xr

from qautoencoder.standard import attributs
from qautoencoder.standard.labels import CoordinatesLabels, TraceLabels

if TYPE_CHECKING:
    from qautoencoder.function.trainer.training import TrainingTrace
    from qautoencoder.standard.types import QaeTrace


def held_costs(trace: TrainingTrace, length: int) -> np.ndarray:
    """The cost per evaluation, held at the last measured value once the run has stopped."""
    costs = trace.costs[:length]
    if costs.size < length:
        costs = np.concatenate([costs, np.full(length - costs.size, costs[-1])])
    return costs


def aggregate_traces(traces: Sequence[TrainingTrace], length: int | None = None) -> QaeTrace:
    """
    Mean and standard deviation of the cost per evaluation index over the runs.

    Runs stopping before `length` evaluations keep their last measured cost. The band is mean +/- one (population)
    standard deviation.
    """
    if len(traces) == 0:
        msg = "Cannot aggregate an empty list of traces."
        raise ValueError(msg)
    length = max(trace.evaluations for trace in traces) if length is None else int(length)
    if length < 1:
        msg = f"The aggregation length must be >= 1. Got {length}."
        raise ValueError(msg)

    run_dim, eval_dim = CoordinatesLabels.run, CoordinatesLabels.eval_index
    costs = xr.DataArray(
        np.stack([held_costs(trace, length) for trace in traces]),
        dims=(run_dim, eval_dim),
        coords={run_dim: np.arange(len(traces)), eval_dim: np.arange(1, length + 1)},
        attrs=attributs.cost_desc,
    )
    mean = costs.mean(run_dim)
    std = costs.std(run_dim)
    aggregate = xr.Dataset(
        {
            TraceLabels.cost: costs,
            TraceLabels.mean: mean.assign_attrs(attributs.mean_cost_desc),
            TraceLabels.std: std.assign_attrs(attributs.std_cost_desc),
            TraceLabels.lower: mean - std,
            TraceLabels.upper: mean + std,
        }
    )
    aggregate[eval_dim].attrs.update(attributs.eval_index_desc)
    return aggregate
