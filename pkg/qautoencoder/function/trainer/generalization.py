"""Junk probabilities of fresh states from the family a mesh was trained on."""

from __future__ import annotations

from typing import TYPE_CHECKING

import numpy as np

from qautoencoder.configuration.parameters.parameter_measurement import MeasurementBackend
from qautoencoder.exception.state_exception import DimensionMismatchError
from qautoencoder.function.autoencoder.compression import junk_probability_batch
from qautoencoder.function.optics.mesh import MeshLayout, ParameterVector, mesh_array
from qautoencoder.function.optics.preparation import PreparationFamily, prepare_state, sample_prep_settings
from qautoencoder.function.trainer.measurement import estimate_junk_probabilities

if TYPE_CHECKING:
    from qautoencoder.standard.types import Seed


def evaluate_generalization(
    layout: MeshLayout,
    parameters: ParameterVector,
    family: PreparationFamily,
    test_count: int,
    seed: Seed = None,
    backend: MeasurementBackend | None = None,
) -> np.ndarray:
    """
    Prepare `test_count` new states of `family` and return the junk probability of each under the trained mesh.

    The settings and the measurement noise use two independent children of `seed`.
    """
    if (family.dim, family.keep) != (layout.dim, layout.keep):
        raise DimensionMismatchError(layout.dim, family.dim, "test family")
    backend = MeasurementBackend() if backend is None else backend
    sequence = seed if isinstance(seed, np.random.SeedSequence) else np.random.SeedSequence(seed)
    settings_seed, noise_seed = (
        np.random.SeedSequence(sequence.entropy, spawn_key=(*sequence.spawn_key, child)) for child in range(2)
    )
    settings = sample_prep_settings(test_count, settings_seed, keep=family.keep)
    states = np.stack([prepare_state(family, setting).amps for setting in settings])
    probabilities = junk_probability_batch(mesh_array(layout, parameters), states, layout.keep)
    return estimate_junk_probabilities(backend, probabilities, np.random.default_rng(noise_seed))
