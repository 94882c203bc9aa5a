import json

import numpy as np
import pandas as pd
import pytest
import xarray as xr

from qautoencoder.configuration.parameters.parameter_trainer import TrainerConfig
from qautoencoder.exception.parameter_exception import MatrixFileError
from qautoencoder.function.optics.mesh import mesh_array
from qautoencoder.function.trainer.aggregation import aggregate_traces
from qautoencoder.function.trainer.training import train
from qautoencoder.writer import base_functions as wfunctions


class TestMatrices:
    def test_round_trip(self, layout_3_2, tmp_path):
        rng = np.random.default_rng(0)
        matrices = [mesh_array(layout_3_2, layout_3_2.random_parameters(rng)) for _ in range(3)]
        path = wfunctions.write_matrices(matrices, tmp_path / "matrices.txt", names=["A", "B", "C"])
        parsed = wfunctions.read_matrices(path)
        assert len(parsed) == 3
        for original, read in zip(matrices, parsed, strict=True):
            assert np.max(np.abs(original - read)) <= 1e-9

    def test_comments_and_blank_lines(self):
        lines = ["# identity", "1 0", "0 0", "0 0", "1 0", "", "", "# next", "0 1", "0 0", "0 0", "0 -1"]
        matrices = wfunctions.parse_matrices(lines)
        assert len(matrices) == 2
        np.testing.assert_array_equal(matrices[1], [[1j, 0], [0, -1j]])

    def test_wrong_token_count(self):
        with pytest.raises(MatrixFileError, match="line 3") as error:
            wfunctions.parse_matrices(["1 0", "0 0", "0 0 0", "1 0"])
        assert error.value.line_number == 3

    def test_not_a_number(self):
        with pytest.raises(MatrixFileError) as error:
            wfunctions.parse_matrices(["# header", "1 0", "zero 0"], source="matrices.txt")
        assert error.value.line_number == 3
        assert "matrices.txt" in str(error.value)

    def test_not_square(self):
        with pytest.raises(MatrixFileError, match="square") as error:
            wfunctions.parse_matrices(["1 0", "0 0", "0 0", "", "1 0", "0 0", "0 0", "1 0"])
        assert error.value.line_number == 1

    def test_empty(self):
        with pytest.raises(MatrixFileError, match="no matrix"):
            wfunctions.parse_matrices(["# nothing"])


class TestTraceExport:
    def test_trace_csv(self, layout_3_2, physical_source, tmp_path):
        trace = train(layout_3_2, physical_source, TrainerConfig(max_evals=12, seed=0))
        path = wfunctions.export_trace(trace, tmp_path / "trace.csv")
        frame = pd.read_csv(path, dtype={"angle_1": str}, keep_default_na=False, float_precision="round_trip")
        assert len(frame) == 12
        assert all(len(value.split(".")[1]) == 6 for value in frame["angle_1"])
        np.testing.assert_array_equal(frame["cost"].to_numpy(), trace.costs)

    def test_aggregate_csv(self, layout_3_2, physical_source, tmp_path):
        traces = [train(layout_3_2, physical_source, TrainerConfig(max_evals=10, seed=seed)) for seed in range(3)]
        path = wfunctions.export_aggregate(aggregate_traces(traces), tmp_path / "aggregate.csv")
        frame = pd.read_csv(path)
        assert list(frame.columns) == ["eval_index", "mean", "std", "lower", "upper"]
        assert frame["eval_index"].tolist() == list(range(1, 11))

    def test_dataset(self, layout_3_2, physical_source, tmp_path):
        trace = train(layout_3_2, physical_source, TrainerConfig(max_evals=10, seed=0))
        path = wfunctions.export_dataset(trace.to_dataset(), tmp_path / "trace.nc", engine="netcdf4")
        with xr.open_dataset(path) as dataset:
            np.testing.assert_array_equal(dataset["cost"].values, trace.costs)

    def test_dataset_engine(self, tmp_path):
        with pytest.raises(ValueError, match="engine"):
            wfunctions.export_dataset(xr.Dataset(), tmp_path / "data.h5", engine="h5netcdf")


class TestManifest:
    def test_checksums(self, tmp_path):
        artifact = wfunctions.export_json({"b": 1, "a": np.float64(0.5)}, tmp_path / "summary.json")
        manifest = wfunctions.export_manifest(
            tmp_path / "manifest.json", configuration={"seed": 3}, seed=3, artifacts=[artifact], version="0.1.0"
        )
        content = json.loads(manifest.read_text())
        assert content["seed"] == 3
        assert content["artifacts"] == {"summary.json": wfunctions.file_checksum(artifact)}

    def test_json_is_stable(self, tmp_path):
        first = wfunctions.export_json({"b": [1, 2], "a": 1}, tmp_path / "first.json")
        second = wfunctions.export_json({"a": 1, "b": [1, 2]}, tmp_path / "second.json")
        assert first.read_bytes() == second.read_bytes()
