"""The (r, c)-near-neighbor index without false negatives.

Points are bucketed by their composite hash key g(x). Because near points may
differ by one in every key component, a query has to see every point whose key
lies within max-norm distance 1 of g(q). Two layouts realise that candidate set:

* full expansion stores each point under all 3^k keys g(x) + delta and probes
  the single bucket g(q);
* light stores each point once under g(x) and probes the 3^k keys g(q) + delta.

Candidates are then filtered with the exact l_p distance, keeping those with
distance <= c * r.
"""

from collections.abc import Iterable, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from datetime import datetime
from enum import StrEnum
from functools import cached_property

import numpy as np
from numpy.typing import ArrayLike, NDArray
from pydantic import BaseModel
from tzlocal import get_localzone

from certann.analysis import (
    AnalysisParams,
    DerivedConstants,
    choose_k_light,
    choose_k_main,
    lp_distances,
)
from certann.errors import (
    AdmissibilityError,
    CellBudgetExceededError,
    DimensionMismatchError,
    InvariantViolationError,
    KSelectionError,
)
from certann.hashing import (
    CompositeHash,
    HashKey,
    hash_points,
    sample_composite,
)
from certann.log import get_logger

logger = get_logger(__name__)

DEFAULT_CELL_BUDGET = 2**24
"""Cap on 3^k: cells written per point (full expansion) or probed per query."""

_GROUP_ROWS = 1 << 20


class IndexMode(StrEnum):
    """Where the 3^k neighbourhood is enumerated."""

    FULL_EXPANSION = "full"
    LIGHT = "light"


@dataclass(frozen=True, eq=False)
class Dataset:
    """Ordered d-dimensional points; the id of a point is its row number."""

    points: NDArray[np.float64]

    def __post_init__(self) -> None:
        """Freeze a float64 copy of the points."""
        points = np.array(self.points, dtype=np.float64)
        if points.ndim != 2 or points.shape[1] < 1:  # noqa: PLR2004
            msg = "dataset points must form an (n, d) array with d >= 1"
            raise AdmissibilityError(msg)
        points.flags.writeable = False
        object.__setattr__(self, "points", points)

    @classmethod
    def empty(cls, dim: int) -> "Dataset":
        """Dataset with no points."""
        return cls(np.zeros((0, dim), dtype=np.float64))

    @property
    def dim(self) -> int:
        """Dimension d."""
        return int(self.points.shape[1])

    @property
    def n(self) -> int:
        """Number of points."""
        return int(self.points.shape[0])

    @property
    def ids(self) -> NDArray[np.int64]:
        """Dense ids 0..n-1."""
        return np.arange(self.n, dtype=np.int64)

    def __len__(self) -> int:
        """Number of points."""
        return self.n


@dataclass(frozen=True)
class QueryResult:
    """Reported points, ordered by distance then id."""

    ids: tuple[int, ...]
    distances: tuple[float, ...]
    candidates_scanned: int
    buckets_probed: int

    @property
    def id_set(self) -> frozenset[int]:
        """Reported ids as a set."""
        return frozenset(self.ids)

    @property
    def far_candidates(self) -> int:
        """Candidates rejected by the distance filter (false positives)."""
        return self.candidates_scanned - len(self.ids)


class IndexMeta(BaseModel):
    """Build metadata."""

    seed: int
    k: int
    n_points: int
    n_buckets: int
    n_references: int
    cell_budget: int
    build_time: datetime | None = None


def enumerate_offsets(
    k: int,
    cell_budget: int = DEFAULT_CELL_BUDGET,
) -> NDArray[np.int64]:
    """All 3^k vectors in {-1, 0, 1}^k in lexicographic order.

    Raises:
        CellBudgetExceededError: if 3^k is above cell_budget.

    """
    if k < 1:
        msg = f"k must be a positive integer, got {k}"
        raise AdmissibilityError(msg)
    if 3**k > cell_budget:
        raise CellBudgetExceededError(k, cell_budget)
    grid = np.indices((3,) * k, dtype=np.int64).reshape(k, -1).T
    return grid - 1


class Index:
    """Immutable bucket map from composite keys to point ids.

    Safe to query from many threads once built.
    """

    def __init__(  # noqa: PLR0913
        self,
        *,
        params: AnalysisParams,
        g: CompositeHash,
        mode: IndexMode,
        dataset: Dataset,
        buckets: dict[HashKey, tuple[int, ...]],
        cell_budget: int = DEFAULT_CELL_BUDGET,
        build_time: datetime | None = None,
    ) -> None:
        """Assemble an index from already computed parts.

        Use build() to construct one from a dataset.
        """
        if dataset.dim != params.d:
            raise DimensionMismatchError(params.d, dataset.dim, "dataset")
        if g.d != params.d:
            raise DimensionMismatchError(params.d, g.d, "hash")
        self.params = params
        self.g = g
        self.mode = IndexMode(mode)
        self.dataset = dataset
        self.buckets = buckets
        self.cell_budget = cell_budget
        self.meta = IndexMeta(
            seed=g.seed,
            k=g.k,
            n_points=dataset.n,
            n_buckets=len(buckets),
            n_references=sum(len(ids) for ids in buckets.values()),
            cell_budget=cell_budget,
            build_time=build_time,
        )

    @property
    def k(self) -> int:
        """Number of concatenated hash functions."""
        return self.g.k

    @property
    def consts(self) -> DerivedConstants:
        """Derived constants of the parameters."""
        return self.params.constants

    @cached_property
    def offsets(self) -> NDArray[np.int64]:
        """The 3^k neighbourhood offsets."""
        return enumerate_offsets(self.k, self.cell_budget)

    def verify(self) -> None:
        """Check the structural invariants of the chosen mode.

        Raises:
            InvariantViolationError: if reference counts or bucket contents are
                inconsistent with the mode.

        """
        per_point = 3**self.k if self.mode is IndexMode.FULL_EXPANSION else 1
        expected = self.dataset.n * per_point
        if self.meta.n_references != expected:
            msg = (
                f"{self.mode} index holds {self.meta.n_references} references, "
                f"expected n * {per_point} = {expected}"
            )
            raise InvariantViolationError(msg)
        for key, ids in self.buckets.items():
            if len(set(ids)) != len(ids):
                msg = f"bucket {key} contains duplicate ids"
                raise InvariantViolationError(msg)


def resolve_k(
    dataset: Dataset,
    params: AnalysisParams,
    mode: IndexMode,
    *,
    clamp_k: bool = False,
) -> int:
    """Automatic k for the mode: the main rule for full expansion, else light."""
    a = params.constants.a
    try:
        if mode is IndexMode.FULL_EXPANSION:
            return choose_k_main(dataset.n, params.d, a)
        return choose_k_light(dataset.n, a, params.constants.b)
    except KSelectionError:
        if not clamp_k:
            raise
        logger.warning("Automatic k is below 1 for n=%d; clamping to k=1", dataset.n)
        return 1


def _group_by_key(
    keys: NDArray[np.int64],
    offsets: NDArray[np.int64],
) -> dict[HashKey, tuple[int, ...]]:
    """Map every key + offset to the ascending ids of the points producing it."""
    n, k = keys.shape
    cells = offsets.shape[0]
    grouped: dict[HashKey, list[int]] = {}
    step = max(1, _GROUP_ROWS // cells)
    for start in range(0, n, step):
        chunk = keys[start : start + step]
        expanded = (chunk[:, np.newaxis, :] + offsets[np.newaxis, :, :]).reshape(-1, k)
        ids = np.repeat(np.arange(start, start + chunk.shape[0]), cells)
        unique_keys, inverse = np.unique(expanded, axis=0, return_inverse=True)
        inverse = inverse.reshape(-1)
        order = np.argsort(inverse, kind="stable")
        splits = np.cumsum(np.bincount(inverse, minlength=unique_keys.shape[0]))[:-1]
        for key_row, members in zip(
            unique_keys.tolist(),
            np.split(ids[order], splits),
            strict=True,
        ):
            grouped.setdefault(tuple(key_row), []).extend(members.tolist())
    return {key: tuple(ids) for key, ids in grouped.items()}


def build(  # noqa: PLR0913
    dataset: Dataset,
    params: AnalysisParams,
    mode: IndexMode = IndexMode.LIGHT,
    k: int | None = None,
    seed: int = 0,
    *,
    cell_budget: int = DEFAULT_CELL_BUDGET,
    clamp_k: bool = False,
) -> Index:
    """Hash every point and fill the buckets for the chosen mode.

    Args:
        dataset: points to index; dimension must equal params.d.
        params: validated analysis parameters.
        mode: full expansion or light.
        k: number of hash functions; derived from n when None.
        seed: seed of the projection vectors.
        cell_budget: cap on 3^k.
        clamp_k: use k=1 instead of failing when the derived k is below 1.

    Raises:
        DimensionMismatchError: if the dataset dimension differs from params.d.
        KSelectionError: if k cannot be derived.
        CellBudgetExceededError: if 3^k exceeds cell_budget.

    """
    if dataset.dim != params.d:
        raise DimensionMismatchError(params.d, dataset.dim, "dataset")
    mode = IndexMode(mode)
    if k is None:
        k = resolve_k(dataset, params, mode, clamp_k=clamp_k)
    offsets = enumerate_offsets(k, cell_budget)
    g = sample_composite(params.dist, params.d, params.r, params.p, k, seed)
    keys = hash_points(g, dataset.points)
    if mode is IndexMode.FULL_EXPANSION:
        buckets = _group_by_key(keys, offsets)
    else:
        buckets = _group_by_key(keys, np.zeros((1, k), dtype=np.int64))
    index = Index(
        params=params,
        g=g,
        mode=mode,
        dataset=dataset,
        buckets=buckets,
        cell_budget=cell_budget,
        build_time=datetime.now(tz=get_localzone()),
    )
    logger.info(
        "Built %s index: n=%d, k=%d, %d buckets, %d references",
        mode,
        dataset.n,
        k,
        index.meta.n_buckets,
        index.meta.n_references,
    )
    return index


def _query_vector(index: Index, q: ArrayLike) -> NDArray[np.float64]:
    qa = np.asarray(q, dtype=np.float64)
    if qa.ndim != 1 or qa.shape[0] != index.params.d:
        raise DimensionMismatchError(index.params.d, qa.size, "query")
    return qa


def candidate_ids(index: Index, q: ArrayLike) -> tuple[NDArray[np.int64], int]:
    """Ids of every point whose key is adjacent to g(q), before distance filtering.

    Returns:
        Sorted unique candidate ids and the number of bucket lookups made.

    """
    qa = _query_vector(index, q)
    key = hash_points(index.g, qa)[0]
    if index.mode is IndexMode.FULL_EXPANSION:
        found: list[Sequence[int]] = [index.buckets.get(tuple(key.tolist()), ())]
        probed = 1
    else:
        probes = (key[np.newaxis, :] + index.offsets).tolist()
        found = [index.buckets.get(tuple(probe), ()) for probe in probes]
        probed = len(probes)
    flat = [point_id for ids in found for point_id in ids]
    return np.unique(np.asarray(flat, dtype=np.int64)), probed


def query(index: Index, q: ArrayLike) -> QueryResult:
    """Report every indexed point within c * r of q that shares an adjacent key.

    All points strictly within r of q are always reported.

    Raises:
        DimensionMismatchError: if q has the wrong dimension.

    """
    qa = _query_vector(index, q)
    candidates, probed = candidate_ids(index, qa)
    if candidates.size == 0:
        return QueryResult(
            ids=(),
            distances=(),
            candidates_scanned=0,
            buckets_probed=probed,
        )
    distances = lp_distances(index.dataset.points[candidates], qa, index.params.p)
    keep = distances <= index.params.far_radius
    kept_ids = candidates[keep]
    kept_distances = distances[keep]
    order = np.lexsort((kept_ids, kept_distances))
    logger.debug(
        "Query probed %d buckets, scanned %d candidates, kept %d",
        probed,
        candidates.size,
        kept_ids.size,
    )
    return QueryResult(
        ids=tuple(int(i) for i in kept_ids[order]),
        distances=tuple(float(x) for x in kept_distances[order]),
        candidates_scanned=int(candidates.size),
        buckets_probed=probed,
    )


def query_many(
    index: Index,
    queries: Iterable[ArrayLike],
    threads: int = 1,
) -> list[QueryResult]:
    """Run queries on a thread pool; results keep the input order."""
    if threads <= 1:
        return [query(index, q) for q in queries]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(lambda q: query(index, q), queries))
