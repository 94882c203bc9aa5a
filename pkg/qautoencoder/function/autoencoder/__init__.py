from .compression import (
    EncodedState,
    RoundTrip,
    TrainingSet,
    cost,
    decode,
    encode,
    junk_probability,
    round_trip,
    success_probability,
)
