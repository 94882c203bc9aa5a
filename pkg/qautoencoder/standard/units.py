"""A module for handling the angle units of wave plates and preparation settings."""

from __future__ import annotations

from enum import StrEnum

import numpy as np
import pint

from qautoencoder.logging.custom_logger import logger


class StandardUnitsLabels(StrEnum):
    """Unit of measurement as used in the model."""

    angle = "degree"
    retardance = "radian"
    probability = "dimensionless"

    def __init__(self: StandardUnitsLabels, unit_as_str: str) -> None:
        """Prevent the instantiation of this class."""
        self._units = pint.application_registry(unit_as_str).units

    @property
    def units(self: StandardUnitsLabels) -> pint.Unit:
        """Convert the string unit to the equivalent pint unit."""
        return self._units


def _as_unit(value: float | str | pint.Quantity, units: StandardUnitsLabels) -> float:
    """Convert a number, a pint string or a pint quantity to a float in the target units."""
    if isinstance(value, bool):
        msg = f"Expected an angle, got a boolean ({value})."
        raise TypeError(msg)
    if isinstance(value, int | float | np.integer | np.floating):
        return float(value)
    if isinstance(value, str):
        try:
            return float(value)
        except ValueError:
            value = pint.application_registry(value)
    if not isinstance(value, pint.Quantity):
        msg = f"Expected a number, a string or a pint.Quantity, not {type(value)}."
        raise TypeError(msg)
    if value.units != units.units:
        logger.debug(f"Converting {value} to {units.units}.")
    try:
        return float(value.to(units.units).magnitude)
    except pint.DimensionalityError as e:
        msg = f"{value} cannot be converted to {units.units}."
        raise ValueError(msg) from e


def as_degrees(value: float | str | pint.Quantity) -> float:
    """Return the angle in degrees. Plain numbers are already degrees."""
    return _as_unit(value, StandardUnitsLabels.angle)


def as_radians(value: float | str | pint.Quantity) -> float:
    """Return the retardance in radians. Plain numbers are already radians."""
    return _as_unit(value, StandardUnitsLabels.retardance)


def wrap_degrees(angles: float | np.ndarray) -> float | np.ndarray:
    """Wrap angles into [0, 360)."""
    wrapped = np.mod(angles, 360.0)
    wrapped = np.where(wrapped >= 360.0, 0.0, wrapped)
    return float(wrapped) if np.ndim(wrapped) == 0 else wrapped
