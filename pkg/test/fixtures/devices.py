import numpy as np
import pytest

from qautoencoder.function.autoencoder.compression import TrainingSet
from qautoencoder.function.core.qudit import PureState
from qautoencoder.function.optics.mesh import build_mesh
from qautoencoder.function.optics.preparation import PreparationFamily, sample_prep_settings
from qautoencoder.function.trainer.training import PreparedTrainingSource


@pytest.fixture()
def layout_3_2():
    return build_mesh(3, 2)


@pytest.fixture()
def physical_family():
    return PreparationFamily(scrambler_angle=30.0)


@pytest.fixture()
def haar_family():
    return PreparationFamily(generation="haar", haar_seed=11)


@pytest.fixture()
def physical_source(physical_family):
    return PreparedTrainingSource(family=physical_family, settings=sample_prep_settings(2, seed=5))


@pytest.fixture()
def basis_training_set():
    """The three basis states. Whatever the mesh, one third of the photons end in the junk mode."""
    return TrainingSet(states=[PureState(row) for row in np.eye(3)], keep=2)
