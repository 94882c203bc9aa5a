from .jones import WavePlate, jones_matrix
from .mesh import GateSlot, MeshLayout, ParameterVector, build_mesh, fit_mesh_parameters, mesh_unitary
from .preparation import (
    PreparationFamily,
    PrepSetting,
    drift_family,
    family_isometry,
    prepare_state,
    sample_prep_settings,
    subspace_angle,
)
