"""Per run results reported by the experiments."""

from __future__ import annotations

from typing import TYPE_CHECKING

import numpy as np
from attrs import asdict, field, frozen

from qautoencoder.standard.labels import EventLabels

if TYPE_CHECKING:
    from qautoencoder.function.trainer.training import TrainingTrace


@frozen(kw_only=True)
class RunSummary:
    """The figures of merit of one training run. Every value can be recomputed from the trace."""

    name: str = field(converter=str)
    seed: int | None = field(default=None)
    final_cost: float = field(converter=float)
    evaluations: int = field(converter=int)
    converged: bool = field(converter=bool, metadata={"description": "Some measured cost <= threshold."})
    threshold: float = field(converter=float)
    kicks: int = field(default=0, converter=int)
    drift_events: int = field(default=0, converter=int)
    test_mean: float | None = field(default=None)
    test_std: float | None = field(default=None)

    @classmethod
    def from_trace(
        cls: type[RunSummary],
        name: str,
        trace: TrainingTrace,
        threshold: float,
        test_probabilities: np.ndarray | None = None,
    ) -> RunSummary:
        """Summarize a trace and, if given, the junk probabilities of the test states."""
        test_mean = test_std = None
        if test_probabilities is not None:
            test_mean = float(np.mean(test_probabilities))
            test_std = float(np.std(test_probabilities))
        return cls(
            name=name,
            seed=trace.seed,
            final_cost=trace.final_cost,
            evaluations=trace.evaluations,
            converged=trace.converged(threshold),
            threshold=threshold,
            kicks=trace.count(EventLabels.kick),
            drift_events=trace.count(EventLabels.drift),
            test_mean=test_mean,
            test_std=test_std,
        )

    def as_dict(self: RunSummary) -> dict:
        return asdict(self)
