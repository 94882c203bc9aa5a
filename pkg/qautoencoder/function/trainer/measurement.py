"""
Estimation of the junk mode occupation.

A measurement sends every training state through the mesh once. It is the unit of the training budget, counted by
`CostMeter`.
"""

from __future__ import annotations

import numpy as np

from qautoencoder.configuration.parameters.parameter_measurement import MeasurementBackend
from qautoencoder.function.autoencoder.compression import TrainingSet, junk_probability_batch
from qautoencoder.function.optics.mesh import MeshLayout, ParameterVector, mesh_array
from qautoencoder.standard.labels import BackendLabels


def estimate_junk_probabilities(
    backend: MeasurementBackend, probabilities: np.ndarray, rng: np.random.Generator | None = None
) -> np.ndarray:
    """Turn the exact junk probabilities of some states into the estimates the backend would report."""
    probabilities = np.clip(np.asarray(probabilities, dtype=np.float64), 0.0, 1.0)
    match backend.mode:
        case BackendLabels.exact:
            return probabilities
        case BackendLabels.sampled:
            counts = _generator(rng).binomial(backend.shots_per_state, probabilities)
            return counts / backend.shots_per_state
        case BackendLabels.poisson:
            generator = _generator(rng)
            junk = generator.poisson(backend.mean_counts * probabilities)
            kept = generator.poisson(backend.mean_counts * (1.0 - probabilities))
            # An empty detection window reads as no junk.
            return junk / np.maximum(junk + kept, 1)
    msg = f"Unknown backend {backend.mode}."
    raise ValueError(msg)


def _generator(rng: np.random.Generator | None) -> np.random.Generator:
    if rng is None:
        msg = "A noisy backend needs a random generator."
        raise ValueError(msg)
    return rng


def measure_cost(
    backend: MeasurementBackend,
    layout: MeshLayout,
    parameters: ParameterVector,
    training_set: TrainingSet,
    rng: np.random.Generator | None = None,
) -> float:
    """Estimate the cost of the mesh at `parameters` (average over the training states)."""
    probabilities = junk_probability_batch(mesh_array(layout, parameters), training_set.amplitudes(), layout.keep)
    return float(np.mean(estimate_junk_probabilities(backend, probabilities, rng)))


class CostMeter:
    """Measure the cost and count the cost function evaluations of a single training run."""

    def __init__(
        self: CostMeter, backend: MeasurementBackend, layout: MeshLayout, rng: np.random.Generator | None = None
    ) -> None:
        """The generator is the stream of the run. It is only consumed by noisy backends."""
        self.backend = backend
        self.layout = layout
        self.rng = rng if rng is not None else np.random.default_rng()
        self.evaluations = 0

    def __call__(self: CostMeter, parameters: ParameterVector, training_set: TrainingSet) -> float:
        """One cost function evaluation."""
        cost = measure_cost(self.backend, self.layout, parameters, training_set, self.rng)
        self.evaluations += 1
        return cost
