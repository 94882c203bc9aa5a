"""Drift of the state preparation during a training run."""

from __future__ import annotations

from attrs import Attribute, field, frozen, validators

from qautoencoder.standard.units import as_degrees


@frozen(kw_only=True)
class DriftSchedule:
    """Rotate the scrambler of the preparation by `step` degrees every `period` cost function evaluations."""

    step: float = field(
        default=4.0,
        converter=as_degrees,
        metadata={"description": "Signed rotation of the scrambler per drift event.", "units": "degree"},
    )
    period: int = field(
        default=5,
        converter=int,
        metadata={"description": "Number of cost function evaluations between two drift events."},
    )
    enabled: bool = field(default=False, validator=validators.instance_of(bool))

    @period.validator
    def _period_positive(self: DriftSchedule, attribute: Attribute, value: int) -> None:
        if self.enabled and value < 1:
            msg = f"Parameter {attribute.name} must be >= 1 when the drift is enabled. Got {value}."
            raise ValueError(msg)

    def is_due(self: DriftSchedule, evaluations: int) -> bool:
        """True when the family must drift right after the given number of evaluations."""
        return self.enabled and evaluations > 0 and evaluations % self.period == 0

    def event_count(self: DriftSchedule, evaluations: int) -> int:
        """Number of drift events after the given number of evaluations."""
        return evaluations // self.period if self.enabled else 0
