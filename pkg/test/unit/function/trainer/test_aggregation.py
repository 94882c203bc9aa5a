import numpy as np
import pytest

from qautoencoder.function.optics.mesh import ParameterVector
from qautoencoder.function.trainer.aggregation import aggregate_traces, held_costs
from qautoencoder.function.trainer.training import TrainingRecord, TrainingTrace


def make_trace(costs):
    records = [
        TrainingRecord(eval_index=index, iteration=0, phase="init", angles=ParameterVector([0.0]), cost=value)
        for index, value in enumerate(costs, start=1)
    ]
    return TrainingTrace(records=records, final_index=len(records) - 1)


class TestHeldCosts:
    def test_hold_last_value(self):
        np.testing.assert_array_equal(held_costs(make_trace([0.5, 0.3, 0.1]), 5), [0.5, 0.3, 0.1, 0.1, 0.1])

    def test_truncate(self):
        np.testing.assert_array_equal(held_costs(make_trace([0.5, 0.3, 0.1]), 2), [0.5, 0.3])


class TestAggregateTraces:
    def test_mean_and_band(self):
        aggregate = aggregate_traces([make_trace([0.4, 0.2]), make_trace([0.6, 0.4, 0.0])])
        np.testing.assert_allclose(aggregate["mean"], [0.5, 0.3, 0.1])
        # Population standard deviation.
        np.testing.assert_allclose(aggregate["std"], [0.1, 0.1, 0.1])
        np.testing.assert_allclose(aggregate["lower"], [0.4, 0.2, 0.0], atol=1e-15)
        np.testing.assert_allclose(aggregate["upper"], [0.6, 0.4, 0.2])
        np.testing.assert_array_equal(aggregate["eval_index"], [1, 2, 3])
        assert aggregate["cost"].shape == (2, 3)

    def test_length(self):
        aggregate = aggregate_traces([make_trace([0.4, 0.2])], length=4)
        np.testing.assert_allclose(aggregate["mean"], [0.4, 0.2, 0.2, 0.2])
        np.testing.assert_array_equal(aggregate["std"], 0)

    def test_empty(self):
        with pytest.raises(ValueError, match="empty"):
            aggregate_traces([])
