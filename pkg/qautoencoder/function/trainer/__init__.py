from .aggregation import aggregate_traces
from .generalization import evaluate_generalization
from .gradient import probe_gradient
from .measurement import CostMeter, measure_cost
from .training import (
    PreparedTrainingSource,
    StaticTrainingSource,
    TrainingRecord,
    TrainingTrace,
    train,
)
