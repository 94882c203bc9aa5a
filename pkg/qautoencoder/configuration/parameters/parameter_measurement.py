"""How the junk mode occupation is measured: exactly, or through photon counts."""

from __future__ import annotations

from attrs import field, frozen, validators

from qautoencoder.exception.parameter_exception import ConfigurationError
from qautoencoder.logging.custom_logger import logger
from qautoencoder.standard.labels import BackendLabels

FEW_SHOTS = 100
"""Below this number of shots per state the cost estimate is mostly noise."""


@frozen(kw_only=True)
class MeasurementBackend:
    """
    The measurement model used to estimate the cost.

    - exact: the junk probability itself.
    - sampled: a fixed number of heralded photons per state, the junk count being binomial.
    - poisson: junk and kept counts are independent Poisson variables of mean `mean_counts * p` and
      `mean_counts * (1 - p)`, the estimate is the junk fraction of the detected photons.
    """

    mode: BackendLabels = field(default=BackendLabels.exact, converter=BackendLabels)
    shots_per_state: int | None = field(
        default=None,
        validator=validators.optional([validators.instance_of(int), validators.ge(1)]),
        metadata={"description": "Photons sent per training state (sampled mode)."},
    )
    mean_counts: float | None = field(
        default=None,
        converter=lambda value: None if value is None else float(value),
        validator=validators.optional(validators.gt(0)),
        metadata={"description": "Mean number of detected photons per training state (poisson mode)."},
    )

    def __attrs_post_init__(self: MeasurementBackend) -> None:
        """Each mode needs its own statistics parameter and only this one."""
        if self.mode is BackendLabels.sampled and self.shots_per_state is None:
            msg = "A sampled backend needs shots_per_state."
            raise ValueError(msg)
        if self.mode is BackendLabels.poisson and self.mean_counts is None:
            msg = "A poisson backend needs mean_counts."
            raise ValueError(msg)
        if self.mode is not BackendLabels.sampled and self.shots_per_state is not None:
            msg = f"shots_per_state is only used by a sampled backend, not by {self.mode}."
            raise ValueError(msg)
        if self.mode is not BackendLabels.poisson and self.mean_counts is not None:
            msg = f"mean_counts is only used by a poisson backend, not by {self.mode}."
            raise ValueError(msg)
        statistics = self.shots_per_state or self.mean_counts
        if statistics is not None and statistics < FEW_SHOTS:
            logger.warning(f"The {self.mode} backend only counts {statistics} photons per state.")

    @classmethod
    def parse(cls: MeasurementBackend, text: str) -> MeasurementBackend:
        """
        Build a backend from its command line form.

        Example:
        -------
        ```python
        MeasurementBackend.parse("exact")
        MeasurementBackend.parse("sampled:10000")
        MeasurementBackend.parse("poisson:5000")
        ```

        """
        name, _, value = str(text).strip().partition(":")
        try:
            mode = BackendLabels(name)
        except ValueError as e:
            msg = f"Unknown backend '{name}'. Expected one of {[label.value for label in BackendLabels]}."
            raise ConfigurationError(msg) from e
        if mode is BackendLabels.exact:
            if value:
                msg = f"The exact backend takes no parameter, got '{value}'."
                raise ConfigurationError(msg)
            return cls(mode=mode)
        try:
            if mode is BackendLabels.sampled:
                return cls(mode=mode, shots_per_state=int(value))
            return cls(mode=mode, mean_counts=float(value))
        except ValueError as e:
            msg = f"Cannot build a backend from '{text}': {e}"
            raise ConfigurationError(msg) from e

    def __str__(self: MeasurementBackend) -> str:
        """The command line form of the backend."""
        match self.mode:
            case BackendLabels.sampled:
                return f"{self.mode}:{self.shots_per_state}"
            case BackendLabels.poisson:
                return f"{self.mode}:{self.mean_counts:g}"
        return str(self.mode)
