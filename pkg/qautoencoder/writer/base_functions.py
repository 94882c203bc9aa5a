"""All the functions to export the results of the experiments to files."""

from __future__ import annotations

import hashlib
import json
from pathlib import Path
from typing import TYPE_CHECKING, Iterable, Literal

import numpy as np
import xarray as xr

from qautoencoder.exception.parameter_exception import MatrixFileError
from qautoencoder.logging.custom_logger import logger
from qautoencoder.standard.labels import CoordinatesLabels, TraceLabels

if TYPE_CHECKING:
    from qautoencoder.function.trainer.training import TrainingTrace
    from qautoencoder.standard.types import ComplexMatrix, QaeTrace

ANGLE_DECIMALS = 6
CHECKSUM_CHUNK = 1 << 16


def _prepare(path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    return path


def _json_default(value: object) -> object:
    if isinstance(value, np.integer | np.floating | np.bool_):
        return value.item()
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, Path):
        return str(value)
    msg = f"Object of type {type(value).__name__} is not JSON serializable."
    raise TypeError(msg)


# --- CSV --- #


def export_trace(trace: TrainingTrace, path: str | Path) -> Path:
    """Write one row per evaluation. Angles have 6 decimals, events are joined by semicolons."""
    frame = trace.to_dataframe()
    for column in frame.columns:
        if str(column).startswith("angle_"):
            frame[column] = frame[column].map(lambda angle: f"{angle:.{ANGLE_DECIMALS}f}")
    path = _prepare(path)
    frame.to_csv(path, index=False)
    return path


def export_aggregate(aggregate: QaeTrace, path: str | Path) -> Path:
    """Write the mean curve and its one standard deviation band, one row per evaluation index."""
    columns = [TraceLabels.mean, TraceLabels.std, TraceLabels.lower, TraceLabels.upper]
    frame = aggregate[columns].to_dataframe().reset_index()
    frame = frame[[CoordinatesLabels.eval_index, *columns]]
    path = _prepare(path)
    frame.to_csv(path, index=False)
    return path


# --- JSON and manifest --- #


def export_json(content: dict, path: str | Path) -> Path:
    """Write a JSON document with sorted keys, so that identical content gives identical bytes."""
    path = _prepare(path)
    with path.open("w", encoding="utf-8") as stream:
        json.dump(content, stream, indent=2, sort_keys=True, default=_json_default)
        stream.write("\n")
    return path


def file_checksum(path: str | Path) -> str:
    """SHA-256 of the file content."""
    digest = hashlib.sha256()
    with Path(path).open("rb") as stream:
        for chunk in iter(lambda: stream.read(CHECKSUM_CHUNK), b""):
            digest.update(chunk)
    return digest.hexdigest()


def export_manifest(
    path: str | Path, configuration: dict, seed: int, artifacts: Iterable[str | Path], version: str
) -> Path:
    """Store the configuration, the master seed and the checksum of every artifact, relative to the manifest."""
    path = Path(path)
    checksums = {}
    for artifact in sorted(Path(artifact) for artifact in artifacts):
        name = artifact.relative_to(path.parent) if artifact.is_relative_to(path.parent) else artifact
        if artifact.is_dir():
            logger.debug(f"Skipping the checksum of the directory {artifact}.")
            continue
        checksums[str(name)] = file_checksum(artifact)
    manifest = {"version": version, "seed": seed, "configuration": configuration, "artifacts": checksums}
    return export_json(manifest, path)


# --- Matrices --- #


def write_matrices(matrices: Iterable[ComplexMatrix], path: str | Path, names: Iterable[str] | None = None) -> Path:
    """One 're im' pair per line, row major, a blank line between two matrices. Names become comment lines."""
    matrices = [np.asarray(matrix, dtype=np.complex128) for matrix in matrices]
    names = list(names) if names is not None else [None] * len(matrices)
    blocks = []
    for name, matrix in zip(names, matrices, strict=True):
        lines = [] if name is None else [f"# {name}"]
        lines += [f"{float(entry.real)!r} {float(entry.imag)!r}" for entry in matrix.ravel()]
        blocks.append("\n".join(lines))
    path = _prepare(path)
    path.write_text("\n\n".join(blocks) + "\n", encoding="utf-8")
    return path


def _close_block(entries: list[complex], first_line: int, source: str | Path | None) -> ComplexMatrix:
    dim = int(round(np.sqrt(len(entries))))
    if dim * dim != len(entries):
        msg = f"a matrix needs a square number of entries, got {len(entries)}."
        raise MatrixFileError(first_line, msg, source)
    return np.array(entries, dtype=np.complex128).reshape(dim, dim)


def parse_matrices(lines: Iterable[str], source: str | Path | None = None) -> list[ComplexMatrix]:
    """Parse the matrix text format. Lines starting with '#' are comments."""
    matrices = []
    entries: list[complex] = []
    first_line = 0
    line_number = 0
    for line_number, raw_line in enumerate(lines, start=1):
        line = raw_line.strip()
        if line.startswith("#"):
            continue
        if not line:
            if entries:
                matrices.append(_close_block(entries, first_line, source))
                entries = []
            continue
        tokens = line.split()
        if len(tokens) != 2:  # noqa: PLR2004
            msg = f"expected a 're im' pair, got {len(tokens)} value(s)."
            raise MatrixFileError(line_number, msg, source)
        try:
            real, imag = float(tokens[0]), float(tokens[1])
        except ValueError as e:
            msg = f"'{line}' is not a pair of numbers."
            raise MatrixFileError(line_number, msg, source) from e
        if not entries:
            first_line = line_number
        entries.append(complex(real, imag))
    if entries:
        matrices.append(_close_block(entries, first_line, source))
    if not matrices:
        raise MatrixFileError(line_number, "no matrix found.", source)
    return matrices


def read_matrices(path: str | Path) -> list[ComplexMatrix]:
    """Read every matrix stored in a text file."""
    path = Path(path)
    with path.open(encoding="utf-8") as stream:
        return parse_matrices(stream, source=path)


# --- Datasets --- #


def export_dataset(
    data: xr.Dataset,
    path: str | Path,
    engine: Literal["zarr", "netcdf4"] = "netcdf4",
) -> Path:
    """Export a trace or an aggregate with xarray."""
    if engine not in ["zarr", "netcdf4"]:
        msg = "The engine must be either 'zarr' or 'netcdf4'."
        raise ValueError(msg)
    path = _prepare(path)
    if engine == "zarr":
        data.to_zarr(path, mode="w")
    else:
        data.to_netcdf(path, mode="w", engine="netcdf4")
    return path
