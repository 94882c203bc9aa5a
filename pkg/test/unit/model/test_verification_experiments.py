import json

import numpy as np
import pytest

from qautoencoder.configuration.experiment.configuration import ExperimentConfiguration
from qautoencoder.exception.parameter_exception import MatrixFileError
from qautoencoder.exception.state_exception import DimensionMismatchError
from qautoencoder.function.optics.mesh import build_mesh, mesh_array
from qautoencoder.model import DecodeCheckExperiment, VerifyUnitariesExperiment, experiment_from_configuration
from qautoencoder.model.verification_experiments import (
    MESH_FIT_TOLERANCE,
    bundled_unitaries_path,
    decode_check,
    verify_matrix,
    verify_unitaries,
)
from qautoencoder.writer import base_functions as wfunctions


class TestVerifyUnitaries:
    def test_bundled_matrices(self):
        reports = verify_unitaries()
        assert len(reports) == 3
        for report in reports:
            assert report["unitarity_error"] <= 5e-3
            assert report["entry_1_3_is_zero"]
            assert report["mesh_compatible"]

    def test_mesh_forces_the_zero(self):
        layout = build_mesh(3, 2)
        rng = np.random.default_rng(0)
        for _ in range(1000):
            assert mesh_array(layout, layout.random_parameters(rng))[0, 2] == 0

    def test_mesh_unitary_round_trip(self, tmp_path):
        layout = build_mesh(3, 2)
        matrix = mesh_array(layout, layout.random_parameters(np.random.default_rng(4)))
        path = wfunctions.write_matrices([matrix], tmp_path / "mesh.txt")
        (report,) = verify_unitaries(path)
        assert report["unitarity_error"] <= 1e-9
        assert report["mesh_residual"] <= 1e-9
        assert report["entry_1_3_is_zero"]

    def test_non_zero_corner(self):
        report = verify_matrix(np.eye(3)[[2, 1, 0]])
        assert not report["entry_1_3_is_zero"]
        assert report["mesh_residual"] <= MESH_FIT_TOLERANCE

    def test_malformed_file(self, tmp_path):
        path = tmp_path / "broken.txt"
        path.write_text("1 0\n0 0\nnot a number\n", encoding="utf-8")
        with pytest.raises(MatrixFileError, match="line 3"):
            verify_unitaries(path)

    def test_bundled_path(self):
        assert bundled_unitaries_path().is_file()


class TestDecodeCheck:
    def test_fidelity_identity(self):
        report = decode_check(1000, seed=0)
        assert report["lossless_samples"] == 100
        assert report["max_identity_deviation"] <= 1e-12
        assert report["max_reconstruction_deviation"] <= 1e-12
        assert report["max_success_deviation"] <= 1e-12
        assert report["max_lossless_deviation"] <= 1e-12

    def test_other_dimensions(self):
        report = decode_check(50, dim=5, keep=3, seed=1)
        assert report["max_identity_deviation"] <= 1e-12

    def test_invalid(self):
        with pytest.raises(ValueError, match="at least one sample"):
            decode_check(0)
        with pytest.raises(DimensionMismatchError):
            decode_check(10, dim=3, keep=3)


class TestVerificationExperiments:
    def test_verify_unitaries_experiment(self, tmp_path):
        configuration = ExperimentConfiguration.from_dict(
            {"experiment": "verify-unitaries", "output": {"directory": str(tmp_path)}}
        )
        experiment = experiment_from_configuration(configuration)
        assert isinstance(experiment, VerifyUnitariesExperiment)
        summary = experiment.execute()
        assert len(summary["matrices"]) == 3
        assert (tmp_path / "report.json").is_file()
        fitted = wfunctions.read_matrices(tmp_path / "unitaries.txt")
        assert all(abs(matrix[0, 2]) == 0 for matrix in fitted)
        manifest = json.loads((tmp_path / "manifest.json").read_text())
        assert set(manifest["artifacts"]) == {"report.json", "unitaries.txt"}

    def test_decode_check_experiment(self, tmp_path):
        configuration = ExperimentConfiguration.from_dict(
            {"experiment": "decode-check", "samples": 20, "seed": 3, "output": {"directory": str(tmp_path)}}
        )
        experiment = experiment_from_configuration(configuration)
        assert isinstance(experiment, DecodeCheckExperiment)
        summary = experiment.execute()
        assert summary["samples"] == 20
        report = json.loads((tmp_path / "report.json").read_text())
        assert report["max_identity_deviation"] <= 1e-12
