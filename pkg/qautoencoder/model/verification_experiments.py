"""Checks that need no training: the reference unitaries and the fidelity identity of the round trip."""

from __future__ import annotations

from importlib import resources
from pathlib import Path

import numpy as np

from qautoencoder.exception.state_exception import DimensionMismatchError
from qautoencoder.function.autoencoder.compression import junk_probability, round_trip
from qautoencoder.function.core.qudit import (
    PureState,
    apply_unitary,
    haar_random_state,
    haar_random_unitary,
    unitarity_error,
)
from qautoencoder.function.optics.mesh import ParameterVector, build_mesh, fit_mesh_parameters, mesh_array
from qautoencoder.logging.custom_logger import logger
from qautoencoder.model.base_experiment import BaseExperiment
from qautoencoder.standard.labels import OutputLabels
from qautoencoder.writer import base_functions as wfunctions

BUNDLED_UNITARIES = "learned_unitaries.txt"
MESH_FIT_TOLERANCE = 1e-2
"""Largest fit residual accepted for matrices printed with three decimals."""


def bundled_unitaries_path() -> Path:
    """The three reference unitaries shipped with the package."""
    return Path(str(resources.files("qautoencoder") / "data" / BUNDLED_UNITARIES))


def verify_matrix(matrix: np.ndarray, keep: int = 2, *, starts: int = 16, seed: int = 0) -> dict:
    """
    Report how close a matrix is to a unitary the mesh can realize.

    The (1, 3) entry is reported with 1-based labels, as the zero forced by the (3, 2) mesh.
    """
    matrix = np.asarray(matrix, dtype=np.complex128)
    dim = matrix.shape[0]
    layout = build_mesh(dim, keep)
    fit = fit_mesh_parameters(matrix, layout, starts=starts, seed=seed)
    corner = complex(matrix[0, dim - 1])
    return {
        "dim": dim,
        "unitarity_error": unitarity_error(matrix),
        "entry_1_3": [corner.real, corner.imag],
        "entry_1_3_is_zero": corner == 0,
        "mesh_residual": fit.residual,
        "mesh_compatible": fit.residual <= MESH_FIT_TOLERANCE,
        "mesh_angles": fit.parameters.angles.tolist(),
    }


def verify_unitaries(path: str | Path | None = None, keep: int = 2) -> list[dict]:
    """Parse a matrix file (the bundled one by default) and verify every matrix."""
    path = bundled_unitaries_path() if path is None else Path(path)
    return [verify_matrix(matrix, keep) for matrix in wfunctions.read_matrices(path)]


def decode_check(samples: int, dim: int = 3, keep: int = 2, seed: int = 0) -> dict:
    """
    Compare, for random (U, state) pairs, the round trip fidelity with 1 - P_j.

    Three quantities are checked:
    - the fidelity returned by the encoder and decoder,
    - the fidelity of an explicit reconstruction U^dagger P U |s> / ||P U |s>||, P projecting on the kept modes,
    - the success probability against ||P U |s>||^2.
    A tenth of the pairs use a state prepared inside the kept subspace of U, where the fidelity must be 1.
    """
    if samples < 1:
        msg = f"decode_check needs at least one sample. Got {samples}."
        raise ValueError(msg)
    if not 1 <= keep < dim:
        raise DimensionMismatchError(dim - 1, keep, "kept modes")
    sequence = np.random.SeedSequence(seed)
    projector = np.diag(np.r_[np.ones(keep), np.zeros(dim - keep)])
    identity_deviation = reconstruction_deviation = success_deviation = 0.0
    lossless_deviation = 0.0
    lossless = max(1, samples // 10)
    for index, child in enumerate(sequence.spawn(samples + lossless)):
        unitary_seed, state_seed = child.spawn(2)
        unitary = haar_random_unitary(dim, unitary_seed)
        if index < samples:
            state = haar_random_state(dim, state_seed)
        else:
            kept = haar_random_state(keep, state_seed).amps
            state = apply_unitary(unitary.dagger, PureState(np.r_[kept, np.zeros(dim - keep)]))
        result = round_trip(unitary, state, keep)
        p_junk = junk_probability(unitary, state, keep)
        if index >= samples:
            lossless_deviation = max(lossless_deviation, abs(result.fidelity - 1.0))
            continue
        projected = projector @ (unitary.entries @ state.amps)
        success = float(np.vdot(projected, projected).real)
        reconstructed = unitary.entries.conj().T @ projected / np.sqrt(success)
        direct_fidelity = abs(np.vdot(state.amps, reconstructed)) ** 2
        identity_deviation = max(identity_deviation, abs(result.fidelity - (1.0 - p_junk)))
        reconstruction_deviation = max(reconstruction_deviation, abs(direct_fidelity - result.fidelity))
        success_deviation = max(success_deviation, abs(result.success_probability - success))
    return {
        "samples": samples,
        "lossless_samples": lossless,
        "max_identity_deviation": identity_deviation,
        "max_reconstruction_deviation": reconstruction_deviation,
        "max_success_deviation": success_deviation,
        "max_lossless_deviation": lossless_deviation,
    }


class VerifyUnitariesExperiment(BaseExperiment):
    """Unitarity, structural zero and mesh compatibility of a set of matrices."""

    def __init__(self: VerifyUnitariesExperiment, *args: object, **kwargs: object) -> None:
        super().__init__(*args, **kwargs)
        self.reports: list[dict] = []

    def run(self: VerifyUnitariesExperiment) -> dict:
        parameters = self.parameters
        path = parameters.matrix_file if parameters.matrix_file is not None else bundled_unitaries_path()
        self.reports = verify_unitaries(path, parameters.keep)
        for index, report in enumerate(self.reports, start=1):
            logger.info(
                f"U{index}: ||U^dagger U - I||_max = {report['unitarity_error']:.2e}, "
                f"U[1,3] zero: {report['entry_1_3_is_zero']}, mesh residual {report['mesh_residual']:.2e}."
            )
        return {"experiment": parameters.experiment.value, "matrix_file": str(path), "matrices": self.reports}

    def export(self: VerifyUnitariesExperiment, directory: Path) -> list[Path]:
        """The report and the unitaries realized by the fitted mesh angles."""
        keep = self.parameters.keep
        fitted = [
            mesh_array(build_mesh(report["dim"], keep), ParameterVector(report["mesh_angles"]))
            for report in self.reports
        ]
        names = [f"U{index} fitted by the mesh" for index in range(1, len(fitted) + 1)]
        return [
            wfunctions.export_json(self._check_summary(), directory / OutputLabels.report),
            wfunctions.write_matrices(fitted, directory / OutputLabels.unitaries, names=names),
        ]


class DecodeCheckExperiment(BaseExperiment):
    """The fidelity of the round trip equals the success probability 1 - P_j."""

    def run(self: DecodeCheckExperiment) -> dict:
        parameters = self.parameters
        report = decode_check(parameters.samples, parameters.dim, parameters.keep, parameters.seed)
        deviation = report["max_identity_deviation"]
        logger.info(f"Max |fidelity - (1 - P_j)| over {parameters.samples} pairs: {deviation:.2e}.")
        return {"experiment": parameters.experiment.value, "seed": parameters.seed} | report

    def export(self: DecodeCheckExperiment, directory: Path) -> list[Path]:
        return [wfunctions.export_json(self._check_summary(), directory / OutputLabels.report)]

