"""
The `qae` command line.

Usage:
-----
```
qae fig3 --config configs/fig3.yaml --seed 7 --out results/fig3
qae train --backend sampled:10000 --d 3 --n 2
qae verify-unitaries
```

Exit codes: 0 on completion, 1 on a configuration error, 2 on an I/O error.
"""

from __future__ import annotations

import argparse
import sys
from typing import NoReturn, Sequence

from qautoencoder import __version__
from qautoencoder.configuration.experiment.configuration import ExperimentConfiguration
from qautoencoder.exception.parameter_exception import ConfigurationError, MatrixFileError
from qautoencoder.logging import custom_logger
from qautoencoder.logging.custom_logger import logger
from qautoencoder.model import run_experiment
from qautoencoder.standard.labels import ExperimentLabels

EXIT_OK = 0
EXIT_CONFIGURATION = 1
EXIT_IO = 2


class _Parser(argparse.ArgumentParser):
    """Report command line errors as configuration errors instead of exiting."""

    def error(self: _Parser, message: str) -> NoReturn:
        self.print_usage(sys.stderr)
        raise ConfigurationError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qae", description="Simulate and train a photonic quantum autoencoder.")
    parser.add_argument("experiment", choices=[label.value for label in ExperimentLabels])
    parser.add_argument("--config", type=str, default=None, help="YAML configuration file.")
    parser.add_argument("--seed", type=int, default=None, help="Master seed, replaces the configured one.")
    parser.add_argument("--out", type=str, default=None, help="Output directory.")
    parser.add_argument(
        "--backend", type=str, default=None, help="Measurement backend: exact, sampled:SHOTS or poisson:MEAN."
    )
    parser.add_argument("--d", type=int, default=None, help="Number of modes of the input qudit.")
    parser.add_argument("--n", type=int, default=None, help="Number of kept modes.")
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument("-v", "--verbose", action="store_true", help="Log debug messages.")
    verbosity.add_argument("-q", "--quiet", action="store_true", help="Only log errors.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    return parser


def load_configuration(arguments: argparse.Namespace) -> ExperimentConfiguration:
    """Read the configuration file if any, then apply the command line overrides."""
    if (arguments.d is None) != (arguments.n is None):
        msg = "--d and --n must be given together."
        raise ConfigurationError(msg)
    if arguments.config is None:
        configuration = ExperimentConfiguration.from_dict({}, experiment=arguments.experiment)
    else:
        configuration = ExperimentConfiguration.parse(arguments.config, experiment=arguments.experiment)
    dims = None if arguments.d is None else (arguments.d, arguments.n)
    return configuration.with_overrides(seed=arguments.seed, output=arguments.out, backend=arguments.backend, dims=dims)


def main(argv: Sequence[str] | None = None) -> int:
    try:
        arguments = build_parser().parse_args(argv)
    except ConfigurationError as e:
        logger.error(str(e))
        return EXIT_CONFIGURATION
    if arguments.verbose:
        custom_logger.set_debug()
    elif arguments.quiet:
        custom_logger.set_error()
    else:
        custom_logger.set_verbose()

    try:
        configuration = load_configuration(arguments)
        run_experiment(configuration)
    except (ConfigurationError, MatrixFileError) as e:
        logger.error(str(e))
        return EXIT_CONFIGURATION
    except OSError as e:
        logger.error(f"I/O error: {e}")
        return EXIT_IO
    except (ValueError, TypeError) as e:
        logger.error(f"Invalid parameters: {e}")
        return EXIT_CONFIGURATION
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
