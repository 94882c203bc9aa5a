import numpy as np
import pytest
from scipy import stats

from qautoencoder.exception.parameter_exception import SampleCountError
from qautoencoder.function.optics.preparation import (
    PreparationFamily,
    PrepSetting,
    drift_family,
    family_isometry,
    prepare_qunit,
    prepare_state,
    sample_prep_settings,
    subspace_angle,
)


def residual_outside(family, state):
    isometry = family_isometry(family)
    return float(np.max(np.abs(state.amps - isometry @ (isometry.conj().T @ state.amps))))


class TestPrepSetting:
    def test_wrapped_angles(self):
        setting = PrepSetting(h=370, q=-10)
        assert (setting.h, setting.q) == (10, 350)
        assert setting.keep == 2

    def test_extra_pairs(self):
        assert PrepSetting(h=0, q=0, extra=(10, 20)).keep == 3
        with pytest.raises(ValueError, match="pairs"):
            PrepSetting(h=0, q=0, extra=(10,))

    def test_horizontal_input(self):
        np.testing.assert_allclose(prepare_qunit(PrepSetting(h=0, q=0)), [1, 0], atol=1e-15)


class TestPreparationFamily:
    def test_physical_isometry(self, physical_family):
        isometry = family_isometry(physical_family)
        np.testing.assert_allclose(isometry.conj().T @ isometry, np.eye(2), atol=1e-10)

    def test_physical_dimensions(self):
        with pytest.raises(ValueError, match="qutrits"):
            PreparationFamily(dim=4, keep=2)

    def test_haar_needs_seed(self):
        with pytest.raises(ValueError, match="haar_seed"):
            PreparationFamily(generation="haar")

    def test_haar_family_other_dimensions(self):
        family = PreparationFamily(generation="haar", haar_seed=3, dim=5, keep=3)
        state = prepare_state(family, PrepSetting(h=10, q=20, extra=(30, 40)))
        assert state.dim == 5
        assert residual_outside(family, state) <= 1e-12


class TestPrepareState:
    @pytest.mark.parametrize("family_name", ["physical_family", "haar_family"])
    def test_state_in_family_subspace(self, family_name, request):
        family = request.getfixturevalue(family_name)
        for setting in sample_prep_settings(200, seed=0):
            state = prepare_state(family, setting)
            assert abs(np.linalg.norm(state.amps) - 1) <= 1e-12
            assert residual_outside(family, state) <= 1e-12

    def test_setting_dimension(self, physical_family):
        with pytest.raises(ValueError, match="qunit"):
            prepare_state(physical_family, PrepSetting(h=0, q=0, extra=(0, 0)))


class TestSamplePrepSettings:
    def test_deterministic(self):
        assert sample_prep_settings(5, seed=1) == sample_prep_settings(5, seed=1)

    def test_prefixes(self):
        assert sample_prep_settings(3, seed=4)[:2] == sample_prep_settings(2, seed=4)

    def test_uniform(self):
        half_angles = np.array([setting.h for setting in sample_prep_settings(10_000, seed=2)])
        assert np.all((half_angles >= 0) & (half_angles < 180))
        counts, _ = np.histogram(half_angles, bins=10, range=(0, 180))
        statistic = np.sum((counts - 1000) ** 2 / 1000)
        assert statistic < stats.chi2.ppf(0.999, df=9)

    def test_count(self):
        with pytest.raises(SampleCountError):
            sample_prep_settings(0)


class TestDrift:
    def test_full_turn(self, physical_family):
        family = physical_family
        for _ in range(90):
            family = drift_family(family, 4.0)
        np.testing.assert_allclose(family_isometry(family), family_isometry(physical_family), atol=1e-12)

    def test_drift_rotates_subspace(self, physical_family):
        assert subspace_angle(physical_family, physical_family) <= 1e-6
        assert subspace_angle(physical_family, drift_family(physical_family, 4.0)) > 0.1
        assert subspace_angle(physical_family, drift_family(physical_family, -4.0)) > 0.1

    def test_haar_family_does_not_move(self, haar_family):
        drifted = drift_family(haar_family, 4.0)
        np.testing.assert_allclose(family_isometry(drifted), family_isometry(haar_family))
