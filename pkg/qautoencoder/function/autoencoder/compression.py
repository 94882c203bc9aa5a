"""
Compression semantics of the autoencoder.

The first n output modes of U are kept, the trailing d - n modes are junk. A photon found in a junk mode is a failed
encoding; conditioned on success the kept amplitudes are renormalized. Decoding pads the qunit with vacuum and applies
U^dagger, and the fidelity of the round trip equals the success probability 1 - P_j.
"""

from __future__ import annotations

import numpy as np
from attrs import Attribute, field, frozen, validators

from qautoencoder.exception.state_exception import (
    CompressionImpossibleError,
    DimensionMismatchError,
    EmptyTrainingSetError,
)
from qautoencoder.function.core.compiled_functions import junk_probabilities
from qautoencoder.function.core.qudit import (
    VECTOR_TOLERANCE,
    PureState,
    UnitaryMatrix,
    apply_unitary,
    fidelity,
    normalize,
)

COMPRESSION_LIMIT = 1.0 - VECTOR_TOLERANCE
"""Junk probabilities above this value leave nothing to renormalize."""


def _check_keep(dim: int, keep: int) -> None:
    if not 1 <= keep < dim:
        msg = f"The number of kept modes must satisfy 1 <= n < d. Got n={keep}, d={dim}."
        raise ValueError(msg)


@frozen(kw_only=True)
class TrainingSet:
    """The states the cost is averaged over, all of the same dimension."""

    states: tuple[PureState, ...] = field(converter=tuple)
    keep: int = field(converter=int, metadata={"description": "Number of retained modes n."})

    @states.validator
    def _states_consistent(self: TrainingSet, attribute: Attribute, value: tuple[PureState, ...]) -> None:
        if len(value) == 0:
            raise EmptyTrainingSetError
        for state in value:
            if not isinstance(state, PureState):
                msg = f"Parameter {attribute.name} must only hold PureState objects, got {type(state)}."
                raise TypeError(msg)
            if state.dim != value[0].dim:
                raise DimensionMismatchError(value[0].dim, state.dim, "training state")

    def __attrs_post_init__(self: TrainingSet) -> None:
        _check_keep(self.dim, self.keep)

    @property
    def dim(self: TrainingSet) -> int:
        return self.states[0].dim

    def __len__(self: TrainingSet) -> int:
        return len(self.states)

    def amplitudes(self: TrainingSet) -> np.ndarray:
        """The states stacked as a [state, mode] array."""
        return np.ascontiguousarray(np.stack([state.amps for state in self.states]))


@frozen(kw_only=True)
class EncodedState:
    """The post-selected qunit and the probability that the photon was lost to the junk modes."""

    kept: PureState = field(
        validator=validators.instance_of(PureState),
        metadata={"description": "Renormalized first n amplitudes of U|s>."},
    )
    p_junk: float = field(
        converter=float,
        validator=[validators.ge(0.0), validators.le(1.0)],
        metadata={"description": "Junk mode occupation probability."},
    )


def junk_probability(unitary: UnitaryMatrix, state: PureState, keep: int) -> float:
    """P_j: probability of finding the photon in modes n..d-1 after U."""
    if unitary.dim != state.dim:
        raise DimensionMismatchError(unitary.dim, state.dim, "state")
    _check_keep(unitary.dim, keep)
    states = np.ascontiguousarray(state.amps[None, :])
    return float(np.clip(junk_probabilities(np.ascontiguousarray(unitary.entries), states, keep)[0], 0.0, 1.0))


def junk_probability_batch(unitary: UnitaryMatrix | np.ndarray, states: np.ndarray, keep: int) -> np.ndarray:
    """P_j of every row of a [state, mode] amplitude array."""
    entries = unitary.entries if isinstance(unitary, UnitaryMatrix) else np.asarray(unitary, dtype=np.complex128)
    if entries.shape[0] != states.shape[1]:
        raise DimensionMismatchError(entries.shape[0], states.shape[1], "states")
    probabilities = junk_probabilities(np.ascontiguousarray(entries), np.ascontiguousarray(states), keep)
    return np.clip(probabilities, 0.0, 1.0)


def cost(unitary: UnitaryMatrix | np.ndarray, training_set: TrainingSet) -> float:
    """Junk mode occupation averaged over the training states."""
    return float(np.mean(junk_probability_batch(unitary, training_set.amplitudes(), training_set.keep)))


def encode(unitary: UnitaryMatrix, state: PureState, keep: int) -> EncodedState:
    """Apply U, discard the junk modes and post-select on the photon staying in the kept modes."""
    encoder_output = apply_unitary(unitary, state)
    p_junk = junk_probability(unitary, state, keep)
    if p_junk >= COMPRESSION_LIMIT:
        raise CompressionImpossibleError(p_junk)
    return EncodedState(kept=normalize(encoder_output.amps[:keep]), p_junk=p_junk)


def decode(unitary: UnitaryMatrix, encoded: EncodedState) -> PureState:
    """Pad the qunit with d - n vacuum modes and apply U^dagger."""
    if encoded.kept.dim >= unitary.dim:
        raise DimensionMismatchError(unitary.dim - 1, encoded.kept.dim, "encoded state")
    padded = np.zeros(unitary.dim, dtype=np.complex128)
    padded[: encoded.kept.dim] = encoded.kept.amps
    return apply_unitary(unitary.dagger, PureState(padded, atol=encoded.kept.atol))


def success_probability(encoded: EncodedState) -> float:
    """Probability that the encoder produces an output photon."""
    return 1.0 - encoded.p_junk


@frozen(kw_only=True)
class RoundTrip:
    """The outcome of an encoding-decoding sequence."""

    decoded: PureState
    fidelity: float
    success_probability: float


def round_trip(unitary: UnitaryMatrix, state: PureState, keep: int) -> RoundTrip:
    """Encode, decode and compare with the input. Fidelity is conditioned on an output being produced."""
    encoded = encode(unitary, state, keep)
    decoded = decode(unitary, encoded)
    return RoundTrip(
        decoded=decoded,
        fidelity=fidelity(state, decoded),
        success_probability=success_probability(encoded),
    )

