"""Dataset readers for the command line.

Two formats are supported: CSV with one vector per line, and fvec binary files
where every record is a little-endian u32 dimension followed by that many
float32 values. Errors name the 1-based line or record where they occurred.
"""

import csv
from enum import StrEnum
from pathlib import Path

import numpy as np
from numpy.typing import NDArray

from certann.errors import IngestError
from certann.index import Dataset
from certann.log import get_logger

logger = get_logger(__name__)

_FVEC_DIM = np.dtype("<u4")
_FVEC_VALUE = np.dtype("<f4")


class IngestFormat(StrEnum):
    """Dataset file formats."""

    CSV = "csv"
    FVEC = "fvec"


def _parse_row(cells: list[str], line: int) -> list[float]:
    values: list[float] = []
    for cell in cells:
        text = cell.strip()
        try:
            value = float(text)
        except ValueError:
            msg = f"line {line}: non-numeric value {text!r}"
            raise IngestError(msg, line) from None
        if not np.isfinite(value):
            msg = f"line {line}: non-finite value {text!r}"
            raise IngestError(msg, line)
        values.append(value)
    return values


def read_csv(path: Path) -> Dataset:
    """Read one comma-separated vector per line; blank lines are skipped."""
    rows: list[list[float]] = []
    dim: int | None = None
    with path.open(newline="") as handle:
        for line, cells in enumerate(csv.reader(handle), start=1):
            if not cells or all(not cell.strip() for cell in cells):
                continue
            values = _parse_row(cells, line)
            if dim is None:
                dim = len(values)
            elif len(values) != dim:
                msg = f"line {line}: expected {dim} values, got {len(values)}"
                raise IngestError(msg, line)
            rows.append(values)
    if dim is None:
        msg = f"empty dataset: {path}"
        raise IngestError(msg)
    return Dataset(np.asarray(rows, dtype=np.float64))


def read_fvec(path: Path) -> Dataset:
    """Read fvec records; every record must share the first record's dimension."""
    data = path.read_bytes()
    if not data:
        msg = f"empty dataset: {path}"
        raise IngestError(msg)
    if len(data) < _FVEC_DIM.itemsize:
        msg = "record 1: truncated dimension header"
        raise IngestError(msg, 1)
    dim = int(np.frombuffer(data, dtype=_FVEC_DIM, count=1)[0])
    if dim == 0:
        msg = "record 1: dimension must be positive"
        raise IngestError(msg, 1)
    record_bytes = _FVEC_DIM.itemsize + dim * _FVEC_VALUE.itemsize
    complete, leftover = divmod(len(data), record_bytes)
    words = np.frombuffer(
        data,
        dtype=_FVEC_DIM,
        count=complete * (dim + 1),
    ).reshape(complete, dim + 1)
    mismatched = np.flatnonzero(words[:, 0] != dim)
    if mismatched.size:
        record = int(mismatched[0]) + 1
        msg = (
            f"record {record}: dimension {int(words[record - 1, 0])} "
            f"differs from {dim}"
        )
        raise IngestError(msg, record)
    if leftover:
        record = complete + 1
        msg = f"record {record}: truncated ({leftover} of {record_bytes} bytes)"
        raise IngestError(msg, record)
    values: NDArray[np.float32] = words[:, 1:].view(_FVEC_VALUE)
    finite = np.all(np.isfinite(values), axis=1)
    if not np.all(finite):
        record = int(np.flatnonzero(~finite)[0]) + 1
        msg = f"record {record}: non-finite value"
        raise IngestError(msg, record)
    return Dataset(values.astype(np.float64))


def ingest(path: Path | str, fmt: IngestFormat | str = IngestFormat.CSV) -> Dataset:
    """Load a dataset file.

    Raises:
        IngestError: on ragged rows, non-numeric cells, mismatched record
            dimensions or an empty file.

    """
    path = Path(path)
    fmt = IngestFormat(fmt)
    if not path.is_file():
        msg = f"dataset file not found: {path}"
        raise IngestError(msg)
    dataset = read_csv(path) if fmt is IngestFormat.CSV else read_fvec(path)
    logger.info("Read %d vectors of dimension %d from %s", dataset.n, dataset.dim, path)
    return dataset


def write_csv(dataset: Dataset, path: Path | str) -> Path:
    """Write points with full float precision, one per line."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        for row in dataset.points.tolist():
            writer.writerow([repr(value) for value in row])
    return path


def write_fvec(dataset: Dataset, path: Path | str) -> Path:
    """Write points as float32 fvec records."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    records = np.empty((dataset.n, dataset.dim + 1), dtype=_FVEC_DIM)
    records[:, 0] = dataset.dim
    records[:, 1:] = dataset.points.astype(_FVEC_VALUE).view(_FVEC_DIM)
    path.write_bytes(records.tobytes())
    return path


def parse_vector(text: str) -> NDArray[np.float64]:
    """Parse a literal vector such as "1.0,2.5,-3"."""
    cells = next(csv.reader([text]), [])
    if not cells:
        msg = "empty query vector"
        raise IngestError(msg)
    return np.asarray(_parse_row(cells, 1), dtype=np.float64)


def read_queries(
    source: str,
    fmt: IngestFormat | str = IngestFormat.CSV,
) -> NDArray[np.float64]:
    """Query vectors from a dataset file, or a single literal vector."""
    if Path(source).is_file():
        return ingest(source, fmt).points
    return parse_vector(source)[np.newaxis, :]
