import json

import pytest

from qautoencoder.cli import EXIT_CONFIGURATION, EXIT_IO, EXIT_OK, build_parser, main
from qautoencoder.exception.parameter_exception import ConfigurationError


class TestParser:
    def test_arguments(self):
        argv = ["fig3", "--seed", "4", "--backend", "sampled:100", "--d", "3", "--n", "2"]
        arguments = build_parser().parse_args(argv)
        assert arguments.experiment == "fig3"
        assert arguments.seed == 4
        assert (arguments.d, arguments.n) == (3, 2)

    def test_unknown_experiment(self):
        with pytest.raises(ConfigurationError, match="invalid choice"):
            build_parser().parse_args(["fig9"])

    def test_verbosity_exclusive(self):
        with pytest.raises(ConfigurationError):
            build_parser().parse_args(["train", "-v", "-q"])


class TestMain:
    def test_unknown_experiment(self, tmp_path):
        assert main(["fig9", "--out", str(tmp_path), "-q"]) == EXIT_CONFIGURATION

    def test_invalid_seed(self, tmp_path):
        assert main(["train", "--seed", "x", "--out", str(tmp_path), "-q"]) == EXIT_CONFIGURATION

    def test_version(self, capsys):
        with pytest.raises(SystemExit) as exit_info:
            main(["--version"])
        assert exit_info.value.code == EXIT_OK
        assert "qae" in capsys.readouterr().out

    def test_decode_check(self, tmp_path, write_configuration):
        config = write_configuration({"experiment": "decode-check", "samples": 20})
        assert main(["decode-check", "--config", str(config), "--out", str(tmp_path / "out"), "-q"]) == EXIT_OK
        report = json.loads((tmp_path / "out" / "report.json").read_text())
        assert report["samples"] == 20
        assert (tmp_path / "out" / "manifest.json").is_file()

    def test_without_configuration_file(self, tmp_path):
        assert main(["verify-unitaries", "--out", str(tmp_path), "-q"]) == EXIT_OK
        assert (tmp_path / "report.json").is_file()

    def test_train_with_overrides(self, tmp_path, write_configuration):
        config = write_configuration({"experiment": "train", "trainer": {"max_evals": 15}, "test_states": 3})
        arguments = ["train", "--config", str(config), "--out", str(tmp_path), "--seed", "2", "--backend", "exact"]
        assert main([*arguments, "-q"]) == EXIT_OK
        summary = json.loads((tmp_path / "summary.json").read_text())
        assert summary["seed"] == 2
        assert summary["runs"][0]["evaluations"] == 15

    def test_configuration_error(self, tmp_path, write_configuration):
        config = write_configuration({"experiment": "fig3", "unknown": 1})
        assert main(["fig3", "--config", str(config), "--out", str(tmp_path), "-q"]) == EXIT_CONFIGURATION

    def test_bad_backend(self, tmp_path):
        assert main(["train", "--backend", "photons:3", "--out", str(tmp_path), "-q"]) == EXIT_CONFIGURATION

    def test_incomplete_dimensions(self, tmp_path):
        assert main(["train", "--d", "3", "--out", str(tmp_path), "-q"]) == EXIT_CONFIGURATION

    def test_physical_family_dimensions(self, tmp_path):
        assert main(["train", "--d", "4", "--n", "2", "--out", str(tmp_path), "-q"]) == EXIT_CONFIGURATION

    def test_missing_configuration_file(self, tmp_path):
        missing = tmp_path / "missing.yaml"
        assert main(["fig3", "--config", str(missing), "--out", str(tmp_path), "-q"]) == EXIT_IO

    def test_missing_matrix_file(self, tmp_path, write_configuration):
        config = write_configuration({"experiment": "verify-unitaries", "matrix_file": str(tmp_path / "none.txt")})
        assert main(["verify-unitaries", "--config", str(config), "--out", str(tmp_path), "-q"]) == EXIT_IO

    def test_malformed_matrix_file(self, tmp_path, write_configuration):
        matrices = tmp_path / "matrices.txt"
        matrices.write_text("1 0\n0 0 0\n", encoding="utf-8")
        config = write_configuration({"experiment": "verify-unitaries", "matrix_file": str(matrices)})
        assert main(["verify-unitaries", "--config", str(config), "--out", str(tmp_path), "-q"]) == EXIT_CONFIGURATION
