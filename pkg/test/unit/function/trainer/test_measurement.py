import numpy as np
import pytest

from qautoencoder.configuration.parameters.parameter_measurement import MeasurementBackend
from qautoencoder.function.autoencoder.compression import TrainingSet, cost
from qautoencoder.function.core.qudit import apply_unitary, normalize
from qautoencoder.function.optics.mesh import mesh_array, mesh_unitary
from qautoencoder.function.trainer.measurement import CostMeter, estimate_junk_probabilities, measure_cost


class TestEstimateJunkProbabilities:
    def test_exact(self):
        probabilities = np.array([0.0, 0.25, 1.0])
        np.testing.assert_array_equal(estimate_junk_probabilities(MeasurementBackend(), probabilities), probabilities)

    @pytest.mark.parametrize("probability", [0.05, 0.25, 0.5])
    def test_binomial_unbiased(self, probability):
        backend = MeasurementBackend.parse("sampled:10000")
        rng = np.random.default_rng(0)
        estimates = estimate_junk_probabilities(backend, np.full(10_000, probability), rng)
        tolerance = 3 * np.sqrt(probability * (1 - probability) / 10_000) / 100
        assert abs(estimates.mean() - probability) <= tolerance

    def test_binomial_without_junk(self):
        backend = MeasurementBackend.parse("sampled:10000")
        estimates = estimate_junk_probabilities(backend, np.zeros(100), np.random.default_rng(4))
        np.testing.assert_array_equal(estimates, 0)

    def test_binomial_resolution(self):
        backend = MeasurementBackend(mode="sampled", shots_per_state=200)
        estimates = estimate_junk_probabilities(backend, np.full(50, 0.3), np.random.default_rng(1))
        np.testing.assert_allclose(estimates * 200, np.round(estimates * 200))

    def test_poisson_bounds(self):
        backend = MeasurementBackend.parse("poisson:5000")
        estimates = estimate_junk_probabilities(backend, np.array([0.0, 0.5, 1.0]), np.random.default_rng(2))
        assert estimates[0] == 0
        assert estimates[2] == 1
        assert 0.4 < estimates[1] < 0.6

    def test_poisson_empty_window(self):
        backend = MeasurementBackend(mode="poisson", mean_counts=1e-9)
        estimates = estimate_junk_probabilities(backend, np.full(20, 0.5), np.random.default_rng(3))
        np.testing.assert_array_equal(estimates, 0)

    def test_noisy_backend_needs_generator(self):
        with pytest.raises(ValueError, match="generator"):
            estimate_junk_probabilities(MeasurementBackend.parse("sampled:100"), np.array([0.5]))


class TestMeasureCost:
    def test_exact_matches_cost(self, layout_3_2, physical_source):
        parameters = layout_3_2.random_parameters(np.random.default_rng(0))
        training_set = physical_source.training_set()
        expected = cost(mesh_array(layout_3_2, parameters), training_set)
        assert abs(measure_cost(MeasurementBackend(), layout_3_2, parameters, training_set) - expected) <= 1e-15

    def test_meter_counts_evaluations(self, layout_3_2, physical_source):
        meter = CostMeter(MeasurementBackend(), layout_3_2)
        parameters = layout_3_2.random_parameters(np.random.default_rng(0))
        for _ in range(3):
            meter(parameters, physical_source.training_set())
        assert meter.evaluations == 3

    def test_sampled_zero_cost(self, layout_3_2):
        parameters = layout_3_2.random_parameters(np.random.default_rng(1))
        unitary = mesh_unitary(layout_3_2, parameters)
        states = [apply_unitary(unitary.dagger, normalize(kept)) for kept in ([1, 0, 0], [0.6, 0.8j, 0])]
        training_set = TrainingSet(states=states, keep=2)
        backend = MeasurementBackend.parse("sampled:10000")
        rng = np.random.default_rng(2)
        assert measure_cost(backend, layout_3_2, parameters, training_set, rng) == 0
