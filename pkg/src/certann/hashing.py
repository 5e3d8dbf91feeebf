"""The offset-free projection hash family and its k-fold concatenation.

A single function is ``h(x) = floor(<x, v> / (r * rho_p))`` with every component
of v drawn from a bounded distribution on [-1, 1]. Two points within distance r
always land in the same or adjacent buckets, so keys are compared with
``max_i |a_i - b_i| <= 1`` instead of equality.

Dot products are evaluated as an elementwise product followed by
``np.add.reduce`` over the last axis, in float64. The reduction order does not
depend on how many points are hashed at once, so a point hashes to the same key
whether it is indexed in a batch or submitted as a query.
"""

import math
import struct
from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np
from numpy.typing import ArrayLike, NDArray

from certann.analysis import DistributionKind, MetricP, PLike, rho_p
from certann.errors import (
    AdmissibilityError,
    DimensionMismatchError,
    HashOverflowError,
    IndexTruncatedError,
    NotAnIndexFileError,
    UnsupportedVersionError,
)
from certann.log import get_logger

logger = get_logger(__name__)

HashKey = tuple[int, ...]

MAX_SEED = 2**64 - 1
HASH_LIMIT = 2**62
"""Largest admissible |<x, v> / denom|; larger values are rejected, not wrapped."""

_CHUNK_ELEMENTS = 1 << 22

MAGIC = b"CANN"
FORMAT_VERSION = 1
_HEADER = struct.Struct("<4sHIIBddBQ")
_PREFIX = struct.Struct("<4sH")
_P_TAG_FINITE = 0
_P_TAG_INFINITE = 1
_DIST_TAGS: dict[DistributionKind, int] = {
    DistributionKind.BOUNDED_UNIFORM: 0,
    DistributionKind.RADEMACHER: 1,
}


def check_seed(seed: int) -> int:
    """Validate a 64-bit unsigned seed."""
    if not 0 <= seed <= MAX_SEED:
        msg = f"seed must be an unsigned 64-bit integer, got {seed}"
        raise AdmissibilityError(msg)
    return seed


def make_rng(seed: int) -> np.random.Generator:
    """Seeded PCG64 generator; the same seed gives the same stream everywhere."""
    return np.random.Generator(np.random.PCG64(check_seed(seed)))


def spawn_rngs(seed: int, count: int) -> list[np.random.Generator]:
    """Independent child streams for parallel workers."""
    children = np.random.SeedSequence(check_seed(seed)).spawn(count)
    return [np.random.Generator(np.random.PCG64(child)) for child in children]


def sample_components(
    dist: DistributionKind,
    shape: int | tuple[int, ...],
    rng: np.random.Generator,
) -> NDArray[np.float64]:
    """Draw i.i.d. projection components in [-1, 1]."""
    if dist is DistributionKind.BOUNDED_UNIFORM:
        return rng.uniform(-1.0, 1.0, size=shape)
    signs = rng.integers(0, 2, size=shape, dtype=np.int8)
    return np.where(signs == 1, 1.0, -1.0)


def _as_matrix(x: ArrayLike, d: int, what: str = "vector") -> NDArray[np.float64]:
    arr = np.asarray(x, dtype=np.float64)
    if arr.ndim == 1:
        arr = arr[np.newaxis, :]
    if arr.ndim != 2 or arr.shape[1] != d:  # noqa: PLR2004
        raise DimensionMismatchError(d, arr.shape[-1] if arr.ndim else 0, what)
    return arr


def project(
    projections: NDArray[np.float64],
    points: NDArray[np.float64],
) -> NDArray[np.float64]:
    """Dot products <x_i, v_j> as an (n, k) array.

    Processed in chunks so memory stays bounded for large n.
    """
    n, d = points.shape
    k = projections.shape[0]
    out = np.empty((n, k), dtype=np.float64)
    step = max(1, _CHUNK_ELEMENTS // max(1, k * d))
    for start in range(0, n, step):
        chunk = points[start : start + step]
        out[start : start + step] = np.add.reduce(
            chunk[:, np.newaxis, :] * projections[np.newaxis, :, :],
            axis=2,
        )
    return out


def floor_checked(quotients: NDArray[np.float64]) -> NDArray[np.int64]:
    """Floor toward -inf, refusing values that do not fit the key range."""
    if quotients.size and not np.all(np.isfinite(quotients)):
        msg = "hash input produced a non-finite projection"
        raise HashOverflowError(msg)
    if quotients.size and np.max(np.abs(quotients)) > HASH_LIMIT:
        msg = (
            f"|<x, v> / (r * rho_p)| exceeds 2^62 ({np.max(np.abs(quotients)):.6g}); "
            "rescale the data or use a larger radius"
        )
        raise HashOverflowError(msg)
    return np.floor(quotients).astype(np.int64)


@dataclass(frozen=True, eq=False)
class HashFunction:
    """One projection vector v and the denominator r * rho_p."""

    v: NDArray[np.float64]
    denom: float

    def __post_init__(self) -> None:
        """Freeze v and check the bounded-support invariant."""
        v = np.array(self.v, dtype=np.float64)
        if v.ndim != 1 or v.size == 0:
            msg = "projection vector must be one-dimensional and non-empty"
            raise AdmissibilityError(msg)
        if np.any(np.abs(v) > 1.0):
            msg = "projection components must lie in [-1, 1]"
            raise AdmissibilityError(msg)
        if not (self.denom > 0 and math.isfinite(self.denom)):
            msg = f"denominator must be positive, got {self.denom}"
            raise AdmissibilityError(msg)
        v.flags.writeable = False
        object.__setattr__(self, "v", v)

    @property
    def d(self) -> int:
        """Dimension."""
        return int(self.v.shape[0])

    def __call__(self, x: ArrayLike) -> int:
        """Shorthand for hash_point(self, x)."""
        return hash_point(self, x)


def sample_hash_function(
    dist: DistributionKind,
    d: int,
    r: float,
    p: PLike,
    rng: np.random.Generator,
) -> HashFunction:
    """Draw v with d i.i.d. components from dist; denom = r * rho_p(d, p)."""
    if not r > 0:
        msg = f"radius must be positive, got {r}"
        raise AdmissibilityError(msg)
    return HashFunction(
        v=sample_components(dist, d, rng),
        denom=r * rho_p(d, p),
    )


def hash_point(h: HashFunction, x: ArrayLike) -> int:
    """Return floor(<x, v> / denom)."""
    points = _as_matrix(x, h.d)
    if points.shape[0] != 1:
        raise DimensionMismatchError(h.d, points.size)
    values = project(h.v[np.newaxis, :], points) / h.denom
    return int(floor_checked(values)[0, 0])


@dataclass(frozen=True, eq=False)
class CompositeHash:
    """g(x) = (h_1(x), ..., h_k(x)) together with the parameters it was drawn for."""

    funcs: tuple[HashFunction, ...]
    dist: DistributionKind
    p: MetricP
    r: float
    seed: int
    projections: NDArray[np.float64] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        """Check the functions agree on d and denom and stack their vectors."""
        if not self.funcs:
            msg = "a composite hash needs at least one function (k >= 1)"
            raise AdmissibilityError(msg)
        d = self.funcs[0].d
        denom = self.funcs[0].denom
        for h in self.funcs[1:]:
            if h.d != d:
                raise DimensionMismatchError(d, h.d, "hash function")
            if h.denom != denom:
                msg = "all hash functions of a composite must share the denominator"
                raise AdmissibilityError(msg)
        object.__setattr__(self, "p", MetricP.of(self.p))
        stacked = np.stack([h.v for h in self.funcs])
        stacked.flags.writeable = False
        object.__setattr__(self, "projections", stacked)

    @property
    def k(self) -> int:
        """Number of concatenated functions."""
        return len(self.funcs)

    @property
    def d(self) -> int:
        """Dimension."""
        return self.funcs[0].d

    @property
    def denom(self) -> float:
        """Shared r * rho_p."""
        return self.funcs[0].denom


def sample_composite(
    dist: DistributionKind,
    d: int,
    r: float,
    p: PLike,
    k: int,
    seed: int,
) -> CompositeHash:
    """Draw k functions, in order, from a single stream seeded with seed."""
    if k < 1:
        msg = f"k must be a positive integer, got {k}"
        raise AdmissibilityError(msg)
    rng = make_rng(seed)
    funcs = tuple(sample_hash_function(dist, d, r, p, rng) for _ in range(k))
    logger.debug("Sampled %d %s hash functions for d=%d (seed %d)", k, dist, d, seed)
    return CompositeHash(funcs=funcs, dist=dist, p=MetricP.of(p), r=r, seed=seed)


def hash_points(g: CompositeHash, points: ArrayLike) -> NDArray[np.int64]:
    """Composite keys for every row, as an (n, k) int64 array."""
    matrix = _as_matrix(points, g.d)
    return floor_checked(project(g.projections, matrix) / g.denom)


def hash_composite(g: CompositeHash, x: ArrayLike) -> HashKey:
    """Componentwise application of the k hash functions to one point."""
    matrix = _as_matrix(x, g.d)
    if matrix.shape[0] != 1:
        raise DimensionMismatchError(g.d, matrix.size)
    return tuple(int(value) for value in hash_points(g, matrix)[0])


def keys_adjacent(a: Sequence[int], b: Sequence[int]) -> bool:
    """True iff max_i |a_i - b_i| <= 1."""
    if len(a) != len(b):
        raise DimensionMismatchError(len(a), len(b), "hash key")
    return all(abs(x - y) <= 1 for x, y in zip(a, b, strict=True))


def encode_composite(g: CompositeHash) -> bytes:
    """Serialize g to the versioned little-endian binary block.

    Bounded-uniform components are stored as float64, Rademacher components as
    packed sign bits (1 for +1), least significant bit first.
    """
    header = _HEADER.pack(
        MAGIC,
        FORMAT_VERSION,
        g.d,
        g.k,
        _P_TAG_INFINITE if g.p.is_infinite else _P_TAG_FINITE,
        g.p.ord,
        g.r,
        _DIST_TAGS[g.dist],
        g.seed,
    )
    flat = g.projections.reshape(-1)
    if g.dist is DistributionKind.RADEMACHER:
        body = np.packbits(flat > 0, bitorder="little").tobytes()
    else:
        body = flat.astype("<f8").tobytes()
    return header + body


def _component_bytes(dist: DistributionKind, count: int) -> int:
    if dist is DistributionKind.RADEMACHER:
        return (count + 7) // 8
    return count * 8


def check_format_header(buffer: bytes | memoryview, offset: int = 0) -> None:
    """Check the magic bytes and format version of a block starting at offset.

    Raises:
        NotAnIndexFileError: if the magic bytes are wrong.
        UnsupportedVersionError: if the format version is unknown.
        IndexTruncatedError: if the buffer ends inside the version field.

    """
    view = memoryview(buffer)
    if len(view) - offset < len(MAGIC) or bytes(view[offset : offset + 4]) != MAGIC:
        msg = "not an index file (missing CANN magic bytes)"
        raise NotAnIndexFileError(msg)
    if len(view) - offset < _PREFIX.size:
        msg = "checksum error: file truncated inside the hash header"
        raise IndexTruncatedError(msg)
    _, version = _PREFIX.unpack_from(view, offset)
    if version != FORMAT_VERSION:
        msg = f"unsupported index format version {version} (expected {FORMAT_VERSION})"
        raise UnsupportedVersionError(msg)


def decode_composite(
    buffer: bytes | memoryview,
    offset: int = 0,
) -> tuple[CompositeHash, int]:
    """Parse a composite block starting at offset.

    Returns:
        The composite hash and the offset just past its block.

    Raises:
        NotAnIndexFileError: if the magic bytes are wrong.
        UnsupportedVersionError: if the format version is unknown.
        IndexTruncatedError: if the buffer ends inside the block.

    """
    view = memoryview(buffer)
    check_format_header(view, offset)
    if len(view) - offset < _HEADER.size:
        msg = "checksum error: file truncated inside the hash header"
        raise IndexTruncatedError(msg)
    _, _, d, k, p_tag, p_value, r, dist_tag, seed = _HEADER.unpack_from(view, offset)
    dist = next((kind for kind, tag in _DIST_TAGS.items() if tag == dist_tag), None)
    if dist is None or p_tag not in {_P_TAG_FINITE, _P_TAG_INFINITE}:
        msg = f"not an index file (unknown tags p={p_tag}, distribution={dist_tag})"
        raise NotAnIndexFileError(msg)
    p = MetricP.INFINITY if p_tag == _P_TAG_INFINITE else MetricP(p_value)
    offset += _HEADER.size
    count = d * k
    size = _component_bytes(dist, count)
    if len(view) - offset < size:
        msg = "checksum error: file truncated inside the projection vectors"
        raise IndexTruncatedError(msg)
    raw = np.frombuffer(view, dtype=np.uint8, count=size, offset=offset)
    if dist is DistributionKind.RADEMACHER:
        bits = np.unpackbits(raw, count=count, bitorder="little")
        flat = np.where(bits == 1, 1.0, -1.0)
    else:
        flat = raw.view("<f8").astype(np.float64)
    offset += size
    denom = r * rho_p(d, p)
    funcs = tuple(
        HashFunction(v=row, denom=denom) for row in flat.reshape(k, d)
    )
    return CompositeHash(funcs=funcs, dist=dist, p=p, r=r, seed=seed), offset
