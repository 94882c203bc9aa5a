from .qudit import (
    PureState,
    TwoModeGate,
    UnitaryMatrix,
    apply_unitary,
    embed_two_mode,
    fidelity,
    haar_random_isometry,
    haar_random_state,
    haar_random_unitary,
    inner_product,
    is_unitary,
    normalize,
    unitarity_error,
)
