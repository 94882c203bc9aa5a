"""
Probing stage of a training iteration: secant slopes along each wave plate angle.

A forward secant is the slope at the middle of the probed interval, so descending on forward secants alone settles
half a step away from the minimum along every plate. Probing forward and backward on alternate iterations cancels that
offset without extra evaluations.
"""

from __future__ import annotations

from typing import TYPE_CHECKING

import numpy as np

if TYPE_CHECKING:
    from qautoencoder.function.autoencoder.compression import TrainingSet
    from qautoencoder.function.optics.mesh import ParameterVector
    from qautoencoder.function.trainer.measurement import CostMeter


def secant_gradient(base_cost: float, probe_costs: np.ndarray, step: float, direction: int = 1) -> np.ndarray:
    """[C(x + direction * s e_k) - C(x)] / (direction * s) for every k, in cost per degree."""
    if step <= 0:
        msg = f"The probe step must be strictly positive. Got {step}."
        raise ValueError(msg)
    if direction not in (1, -1):
        msg = f"The probe direction must be 1 or -1. Got {direction}."
        raise ValueError(msg)
    return (np.asarray(probe_costs, dtype=np.float64) - base_cost) / (direction * step)


def probe_gradient(
    meter: CostMeter, parameters: ParameterVector, training_set: TrainingSet, step: float, direction: int = 1
) -> np.ndarray:
    """
    Estimate the gradient of the cost at `parameters` (cost per degree).

    The base point is measured once, then each plate is rotated alone by `direction * step` degrees. This consumes
    param_count + 1 evaluations of `meter`.
    """
    if step <= 0:
        msg = f"The probe step must be strictly positive. Got {step}."
        raise ValueError(msg)
    base_cost = meter(parameters, training_set)
    probe_costs = np.array(
        [meter(parameters.rotate(index, direction * step), training_set) for index in range(len(parameters))]
    )
    return secant_gradient(base_cost, probe_costs, step, direction)


def movement(gradient: np.ndarray, step: float, learning_rate: float = 1.0) -> np.ndarray:
    """
    Angle change (degrees) of the movement stage.

    The step is taken in radian measure of the plate angles: x <- x - learning_rate * s_a * dC/dx with s_a and x in
    radians. With a gradient in cost per degree this is -(180 / pi) * learning_rate * s_a * gradient degrees.
    """
    return -np.rad2deg(learning_rate * step * np.asarray(gradient, dtype=np.float64))
