"""Read and write index files.

The layout is documented bit-exactly in docs/index_format.md. Everything is
little-endian and the file ends with a CRC-64 of all preceding bytes. Build
time is not stored, so equal inputs give byte-identical files.
"""

import struct
from pathlib import Path

import crcmod.predefined
import numpy as np

from certann.analysis import AnalysisParams
from certann.errors import (
    IndexChecksumError,
    IndexFormatError,
    IndexTruncatedError,
)
from certann.hashing import (
    CompositeHash,
    HashKey,
    check_format_header,
    decode_composite,
    encode_composite,
)
from certann.index import Dataset, Index, IndexMode
from certann.log import get_logger

logger = get_logger(__name__)

_INDEX_HEADER = struct.Struct("<BdQQ")
_COUNT = struct.Struct("<Q")
_RECORD_LENGTH = struct.Struct("<I")
_CRC = struct.Struct("<Q")
_MIN_FILE_SIZE = 6 + _CRC.size  # magic, version, checksum
_MODE_TAGS: dict[IndexMode, int] = {
    IndexMode.FULL_EXPANSION: 0,
    IndexMode.LIGHT: 1,
}

crc64 = crcmod.predefined.mkPredefinedCrcFun("crc-64-we")
"""CRC-64/WE (ECMA-182 polynomial, init and xorout all ones)."""


class IndexSerializer:
    """Serialize an Index to its binary file format and back."""

    def encode(self, index: Index) -> bytes:
        """Return the complete file contents, checksum included."""
        parts: list[bytes] = [
            encode_composite(index.g),
            _INDEX_HEADER.pack(
                _MODE_TAGS[index.mode],
                index.params.c,
                index.cell_budget,
                index.dataset.n,
            ),
            index.dataset.points.astype("<f8").tobytes(),
            _COUNT.pack(len(index.buckets)),
        ]
        for key in sorted(index.buckets):
            ids = index.buckets[key]
            parts.append(np.asarray(key, dtype="<i8").tobytes())
            parts.append(_RECORD_LENGTH.pack(len(ids)))
            parts.append(np.asarray(ids, dtype="<u4").tobytes())
        body = b"".join(parts)
        return body + _CRC.pack(crc64(body))

    def decode(self, data: bytes) -> Index:
        """Parse file contents.

        Raises:
            NotAnIndexFileError: if the magic bytes are missing.
            UnsupportedVersionError: if the format version is unknown.
            IndexTruncatedError: if the file is too short for its header.
            IndexChecksumError: if the stored CRC-64 does not match.
            IndexFormatError: if the checksummed contents are inconsistent,
                including parameters outside their admissible ranges.

        """
        view = memoryview(data)
        check_format_header(view)
        if len(view) < _MIN_FILE_SIZE:
            msg = "checksum error: index file is truncated"
            raise IndexTruncatedError(msg)
        body = view[: -_CRC.size]
        (stored,) = _CRC.unpack_from(view, len(view) - _CRC.size)
        actual = crc64(bytes(body))
        if stored != actual:
            msg = (
                f"checksum error: stored CRC-64 {stored:016x} does not match "
                f"contents {actual:016x} (file truncated or corrupted)"
            )
            raise IndexChecksumError(msg)
        try:
            g, offset = decode_composite(body)
            return self._decode_body(body, g, offset)
        except (struct.error, ValueError) as err:
            msg = f"malformed index file: {err}"
            raise IndexFormatError(msg) from err

    def _decode_body(
        self,
        body: memoryview,
        g: CompositeHash,
        offset: int,
    ) -> Index:
        mode_tag, c, cell_budget, n = _INDEX_HEADER.unpack_from(body, offset)
        offset += _INDEX_HEADER.size
        mode = next((m for m, tag in _MODE_TAGS.items() if tag == mode_tag), None)
        if mode is None:
            msg = f"malformed index file: unknown mode tag {mode_tag}"
            raise IndexFormatError(msg)
        coordinates = np.frombuffer(body, dtype="<f8", count=n * g.d, offset=offset)
        offset += coordinates.nbytes
        dataset = Dataset(coordinates.astype(np.float64).reshape(n, g.d))
        (bucket_count,) = _COUNT.unpack_from(body, offset)
        offset += _COUNT.size
        buckets: dict[HashKey, tuple[int, ...]] = {}
        for _ in range(bucket_count):
            key = np.frombuffer(body, dtype="<i8", count=g.k, offset=offset)
            offset += key.nbytes
            (length,) = _RECORD_LENGTH.unpack_from(body, offset)
            offset += _RECORD_LENGTH.size
            ids = np.frombuffer(body, dtype="<u4", count=length, offset=offset)
            offset += ids.nbytes
            buckets[tuple(key.tolist())] = tuple(ids.tolist())
        if offset != len(body):
            msg = f"malformed index file: {len(body) - offset} trailing bytes"
            raise IndexFormatError(msg)
        params = AnalysisParams(d=g.d, p=g.p, r=g.r, c=c, dist=g.dist)
        return Index(
            params=params,
            g=g,
            mode=mode,
            dataset=dataset,
            buckets=buckets,
            cell_budget=cell_budget,
        )

    def write(self, index: Index, path: Path) -> Path:
        """Write an index file, creating parent directories."""
        path.parent.mkdir(parents=True, exist_ok=True)
        data = self.encode(index)
        path.write_bytes(data)
        logger.info("Wrote index to %s (%d bytes)", path, len(data))
        return path

    def read(self, path: Path) -> Index:
        """Read an index file."""
        try:
            data = path.read_bytes()
        except OSError as err:
            msg = f"cannot read index file {path}: {err.strerror}"
            raise IndexFormatError(msg) from err
        index = self.decode(data)
        logger.info(
            "Loaded %s index from %s: n=%d, k=%d",
            index.mode,
            path,
            index.dataset.n,
            index.k,
        )
        return index


def save_index(index: Index, path: Path | str) -> Path:
    """Write index to path."""
    return IndexSerializer().write(index, Path(path))


def load_index(path: Path | str) -> Index:
    """Read an index previously written by save_index."""
    return IndexSerializer().read(Path(path))
