"""The parameters of the gradient descent that trains the wave plate angles."""

from __future__ import annotations

from typing import Iterable

import numpy as np
from attrs import Attribute, field, frozen, validators

from qautoencoder.logging.custom_logger import logger
from qautoencoder.standard.units import as_degrees


def _optional_angles(values: Iterable[float | str] | None) -> tuple[float, ...] | None:
    if values is None:
        return None
    return tuple(as_degrees(value) for value in values)


@frozen(kw_only=True)
class TrainerConfig:
    """
    Step sizes, thresholds and budget of a training run.

    Angle valued fields are degrees. They also accept pint strings such as "0.2 radian".
    """

    s_coarse: float = field(
        default=12.0,
        converter=as_degrees,
        validator=validators.gt(0),
        metadata={"description": "Step size until a cost drops under fine_threshold.", "units": "degree"},
    )
    s_fine: float = field(
        default=5.0,
        converter=as_degrees,
        validator=validators.gt(0),
        metadata={"description": "Step size once a cost dropped under fine_threshold.", "units": "degree"},
    )
    fine_threshold: float = field(
        default=0.1,
        converter=float,
        validator=[validators.gt(0), validators.lt(1)],
        metadata={"description": "Cost under which the fine step size is used. Also the target of the stuck rule."},
    )
    stuck_window: int = field(
        default=50,
        converter=int,
        validator=validators.ge(1),
        metadata={"description": "Iterations without a cost under fine_threshold before every plate is kicked."},
    )
    kick: float = field(
        default=25.0,
        converter=as_degrees,
        validator=validators.gt(0),
        metadata={"description": "Rotation applied to every plate by a kick.", "units": "degree"},
    )
    early_stop: float | None = field(
        default=None,
        converter=lambda value: None if value is None else float(value),
        validator=validators.optional([validators.ge(0), validators.le(1)]),
        metadata={"description": "Stop as soon as a measured cost is lower or equal to this value."},
    )
    max_evals: int = field(
        default=200,
        converter=int,
        validator=validators.ge(1),
        metadata={"description": "Budget of cost function evaluations."},
    )
    learning_rate: float = field(
        default=1.0,
        converter=float,
        validator=validators.gt(0),
        metadata={"description": "Proportionality constant between the step and s_a times the gradient."},
    )
    alternate_probes: bool = field(
        default=True,
        validator=validators.instance_of(bool),
        metadata={
            "description": (
                "Probe forward on even iterations and backward on odd ones. If False every probe rotates a plate "
                "forward."
            )
        },
    )
    initial_angles: tuple[float, ...] | None = field(
        default=None,
        converter=_optional_angles,
        metadata={"description": "Fixed starting angles, drawn in [0, 360) if None.", "units": "degree"},
    )
    seed: int | None = field(
        default=None,
        validator=validators.optional(validators.instance_of((int, np.integer))),
        metadata={"description": "Seed of the initialization and of the measurement noise."},
    )

    @initial_angles.validator
    def _initial_angles_not_empty(
        self: TrainerConfig, attribute: Attribute, value: tuple[float, ...] | None
    ) -> None:
        if value is not None and len(value) == 0:
            msg = f"Parameter {attribute.name} must hold at least one angle or be None."
            raise ValueError(msg)

    def __attrs_post_init__(self: TrainerConfig) -> None:
        """Warn about valid but unusual schedules."""
        if self.s_fine > self.s_coarse:
            logger.warning(
                f"The fine step ({self.s_fine} degree) is larger than the coarse step ({self.s_coarse} degree)."
            )

    def step_size(self: TrainerConfig, *, fine: bool) -> float:
        """The s_a value of the current schedule."""
        return self.s_fine if fine else self.s_coarse

    def probe_direction(self: TrainerConfig, iteration: int) -> int:
        """Sign of the probe rotations of an iteration."""
        if self.alternate_probes and iteration % 2 == 1:
            return -1
        return 1
