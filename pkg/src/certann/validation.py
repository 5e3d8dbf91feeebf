"""Empirical checks of the index guarantees and the hash family's bounds.

Contains the linear-scan oracle, Monte-Carlo collision estimators with Wilson
score confidence bounds, the tightness witnesses showing the approximation
threshold cannot be lowered for this family, and sampled checks of the norm
inequalities the bounds rely on.

Estimators split their trials over worker threads, each with its own child
stream of the seed, and merge counts by summation. Results are deterministic
for a given (seed, workers) pair.
"""

import csv
import io
import math
from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import StrEnum
from pathlib import Path

import numpy as np
from numpy.typing import ArrayLike, NDArray
from pydantic import BaseModel, Field, computed_field
from scipy import stats

from certann.analysis import (
    AnalysisParams,
    DistributionKind,
    MetricP,
    PLike,
    expected_false_positives,
    lp_distances,
    lp_norm,
    max_scale,
    rho_p,
    tau,
)
from certann.errors import AdmissibilityError, DimensionMismatchError
from certann.hashing import (
    check_seed,
    floor_checked,
    make_rng,
    project,
    sample_components,
    spawn_rngs,
)
from certann.index import Dataset, Index, IndexMode, build, query_many
from certann.log import get_logger

logger = get_logger(__name__)

CONFIDENCE = 0.99
RELATIVE_TOLERANCE = 1e-12
FAR_PAIR_SPREAD = (1.01, 10.0)
"""Far pairs are placed at u * c * r with u uniform in this range."""

_BATCH_FUNCTIONS = 4096

CSV_COLUMNS = (
    "d",
    "p",
    "c_over_tau",
    "distribution",
    "trials",
    "rate",
    "wilson_upper",
    "bound",
    "pass",
)


def _wilson(successes: int, trials: int, confidence: float) -> tuple[float, float]:
    # a two-sided interval at 2*conf - 1 has one-sided conf bounds at each end
    interval = stats.binomtest(successes, trials).proportion_ci(
        confidence_level=2.0 * confidence - 1.0,
        method="wilson",
    )
    return float(interval.low), float(interval.high)


def wilson_upper(successes: int, trials: int, confidence: float = CONFIDENCE) -> float:
    """One-sided upper Wilson score bound on a binomial proportion."""
    return _wilson(successes, trials, confidence)[1]


def wilson_lower(successes: int, trials: int, confidence: float = CONFIDENCE) -> float:
    """One-sided lower Wilson score bound on a binomial proportion."""
    return _wilson(successes, trials, confidence)[0]


class CollisionEstimate(BaseModel):
    """Counts of |h(x) - h(y)| <= 1 over independently drawn hash functions."""

    trials: int = Field(ge=1)
    collisions: int = Field(ge=0)

    @computed_field  # type: ignore[prop-decorator]
    @property
    def rate(self) -> float:
        """collisions / trials."""
        return self.collisions / self.trials

    @computed_field  # type: ignore[prop-decorator]
    @property
    def wilson_upper_99(self) -> float:
        """99% upper confidence bound on the collision probability."""
        return wilson_upper(self.collisions, self.trials)

    @property
    def non_collisions(self) -> int:
        """Trials where the keys were more than one apart."""
        return self.trials - self.collisions

    def __add__(self, other: "CollisionEstimate | None") -> "CollisionEstimate":
        """Merge two estimates over disjoint trials."""
        if not other:
            return self
        return CollisionEstimate(
            trials=self.trials + other.trials,
            collisions=self.collisions + other.collisions,
        )


def _split(total: int, parts: int) -> list[int]:
    base, extra = divmod(total, parts)
    return [base + (1 if i < extra else 0) for i in range(parts)]


def _count_collisions(  # noqa: PLR0913
    x: NDArray[np.float64],
    y: NDArray[np.float64],
    dist: DistributionKind,
    denom: float,
    trials: int,
    seed: int,
    workers: int = 1,
) -> CollisionEstimate:
    if trials < 1:
        msg = f"trials must be a positive integer, got {trials}"
        raise AdmissibilityError(msg)
    workers = max(1, min(workers, trials))
    pair = np.stack([x, y])

    def run(rng: np.random.Generator, count: int) -> CollisionEstimate:
        collisions = 0
        remaining = count
        while remaining:
            batch = min(remaining, _BATCH_FUNCTIONS)
            vectors = sample_components(dist, (batch, pair.shape[1]), rng)
            keys = floor_checked(project(vectors, pair) / denom)
            collisions += int(np.count_nonzero(np.abs(keys[0] - keys[1]) <= 1))
            remaining -= batch
        return CollisionEstimate(trials=count, collisions=collisions)

    rngs = spawn_rngs(seed, workers)
    counts = _split(trials, workers)
    if workers == 1:
        return run(rngs[0], counts[0])
    with ThreadPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(run, rngs, counts))
    total = parts[0]
    for part in parts[1:]:
        total = total + part
    return total


def _pair(
    x: ArrayLike,
    y: ArrayLike,
) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    xa = np.asarray(x, dtype=np.float64)
    ya = np.asarray(y, dtype=np.float64)
    if xa.ndim != 1 or xa.shape != ya.shape:
        raise DimensionMismatchError(xa.size, ya.size)
    return xa, ya


def estimate_collision_probability(  # noqa: PLR0913
    x: ArrayLike,
    y: ArrayLike,
    params: AnalysisParams,
    trials: int,
    seed: int,
    workers: int = 1,
) -> CollisionEstimate:
    """Estimate P(|h(x) - h(y)| <= 1) by drawing trials independent functions."""
    xa, ya = _pair(x, y)
    if xa.shape[0] != params.d:
        raise DimensionMismatchError(params.d, xa.shape[0])
    return _count_collisions(
        xa,
        ya,
        params.dist,
        params.r * params.constants.rho_p,
        trials,
        seed,
        workers,
    )


def brute_force_query(
    dataset: Dataset,
    q: ArrayLike,
    p: PLike,
    radius: float,
    *,
    strict: bool = False,
) -> frozenset[int]:
    """Exact linear scan: ids with distance <= radius (< radius when strict)."""
    distances = lp_distances(dataset.points, q, p)
    mask = distances < radius if strict else distances <= radius
    return frozenset(int(i) for i in np.flatnonzero(mask))


class BoundRow(BaseModel):
    """One line of a validation report."""

    d: int
    p: str
    c_over_tau: float
    distribution: str
    trials: int
    rate: float
    wilson_upper: float
    bound: float
    passed: bool

    def csv_values(self) -> list[str]:
        """Values in CSV_COLUMNS order, floats at full precision."""
        return [
            str(self.d),
            self.p,
            repr(self.c_over_tau),
            self.distribution,
            str(self.trials),
            repr(self.rate),
            repr(self.wilson_upper),
            repr(self.bound),
            "true" if self.passed else "false",
        ]


class ValidationReport(BaseModel):
    """Rows of bound checks together with how they were produced."""

    title: str
    workers: int = 1
    seed: int = 0
    rows: list[BoundRow] = Field(default_factory=list)

    @property
    def violations(self) -> list[BoundRow]:
        """Rows that failed their check."""
        return [row for row in self.rows if not row.passed]

    @property
    def passed(self) -> bool:
        """True when no row failed."""
        return not self.violations

    def __add__(self, other: "ValidationReport") -> "ValidationReport":
        """Concatenate rows of two reports."""
        return ValidationReport(
            title=self.title,
            workers=self.workers,
            seed=self.seed,
            rows=[*self.rows, *other.rows],
        )

    def to_csv(self) -> str:
        """Render the rows as CSV with a header line."""
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for row in self.rows:
            writer.writerow(row.csv_values())
        return buffer.getvalue()

    def write_csv(self, path: Path) -> Path:
        """Write to_csv() to path."""
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(self.to_csv())
        return path


def random_far_pair(
    params: AnalysisParams,
    rng: np.random.Generator,
) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """A pair at l_p distance u * c * r, u uniform in FAR_PAIR_SPREAD."""
    x = rng.standard_normal(params.d)
    direction = rng.standard_normal(params.d)
    direction /= float(lp_norm(direction, params.p))
    u = rng.uniform(*FAR_PAIR_SPREAD)
    return x, x + direction * (u * params.far_radius)


def check_far_pair_bound(  # noqa: PLR0913
    params: AnalysisParams,
    num_pairs: int,
    trials: int,
    seed: int,
    workers: int = 1,
    pairs: Sequence[tuple[NDArray[np.float64], NDArray[np.float64]]] | None = None,
) -> ValidationReport:
    """Check the Wilson upper bound of far-pair collisions against p_fp.

    Violations are reported as failed rows, not raised.
    """
    rng = make_rng(seed)
    if pairs is None:
        pairs = [random_far_pair(params, rng) for _ in range(num_pairs)]
    consts = params.constants
    report = ValidationReport(
        title=f"far-pair bound ({params.dist}, d={params.d}, p={params.p})",
        workers=workers,
        seed=seed,
    )
    for x, y in pairs:
        trial_seed = int(rng.integers(0, 2**63))
        estimate = estimate_collision_probability(
            x,
            y,
            params,
            trials,
            trial_seed,
            workers,
        )
        report.rows.append(
            BoundRow(
                d=params.d,
                p=str(params.p),
                c_over_tau=params.c / consts.tau,
                distribution=str(params.dist),
                trials=estimate.trials,
                rate=estimate.rate,
                wilson_upper=estimate.wilson_upper_99,
                bound=consts.p_fp,
                passed=estimate.wilson_upper_99 <= consts.p_fp,
            ),
        )
    logger.info(
        "Far-pair bound: %d/%d pairs within p_fp=%.6g",
        len(report.rows) - len(report.violations),
        len(report.rows),
        consts.p_fp,
    )
    return report


class TightnessRegime(StrEnum):
    """Which construction a witness uses."""

    P_GE_2 = "p>=2"
    P_LT_2 = "p<2"


@dataclass(frozen=True, eq=False)
class TightnessWitness:
    """A point far from the origin that still collides with it.

    For p >= 2 it has one nonzero coordinate; for p < 2 all coordinates equal.
    """

    point: NDArray[np.float64]
    claimed_norm: float
    epsilon: float
    regime: TightnessRegime


def tightness_witness_pge2(
    d: int,
    p: PLike,
    r: float,
    epsilon: float,
) -> TightnessWitness:
    """x0 = (r*rho_p - epsilon, 0, ..., 0), with |x0|_p = r*rho_p - epsilon."""
    metric = MetricP.of(p)
    if not (metric.is_infinite or metric.ord >= 2):  # noqa: PLR2004
        msg = f"this witness needs p >= 2, got p={metric}"
        raise AdmissibilityError(msg)
    scale = r * rho_p(d, metric)
    if not 0 < epsilon < scale:
        msg = f"epsilon must be in (0, r*rho_p = {scale:.6g}), got {epsilon}"
        raise AdmissibilityError(msg)
    point = np.zeros(d, dtype=np.float64)
    point[0] = scale - epsilon
    return TightnessWitness(
        point=point,
        claimed_norm=scale - epsilon,
        epsilon=epsilon,
        regime=TightnessRegime.P_GE_2,
    )


def tightness_witness_plt2(
    d: int,
    p: PLike,
    r: float,
    epsilon: float,
) -> TightnessWitness:
    """x1 = r * d^(-1/p + 1/2 - epsilon) * (1, ..., 1).

    Its l_p norm is r * d^(1/2 - epsilon), far above r for large d, yet its
    projection concentrates around zero.
    """
    metric = MetricP.of(p)
    if metric.is_infinite or not 1 <= metric.ord < 2:  # noqa: PLR2004
        msg = f"this witness needs 1 <= p < 2, got p={metric}"
        raise AdmissibilityError(msg)
    if not epsilon > 0:
        msg = f"epsilon must be positive, got {epsilon}"
        raise AdmissibilityError(msg)
    if d < 1:
        msg = f"dimension d must be a positive integer, got {d}"
        raise AdmissibilityError(msg)
    coordinate = r * float(d) ** (-metric.inverse + 0.5 - epsilon)
    return TightnessWitness(
        point=np.full(d, coordinate, dtype=np.float64),
        claimed_norm=r * float(d) ** (0.5 - epsilon),
        epsilon=epsilon,
        regime=TightnessRegime.P_LT_2,
    )


def hoeffding_bound(d: int, epsilon: float) -> float:
    """2 * exp(-d^(2*epsilon) / 2); may exceed 1, in which case it is vacuous."""
    if d < 1 or not epsilon > 0:
        msg = f"need d >= 1 and epsilon > 0, got d={d}, epsilon={epsilon}"
        raise AdmissibilityError(msg)
    return 2.0 * math.exp(-(float(d) ** (2.0 * epsilon)) / 2.0)


def _witness_row(  # noqa: PLR0913
    witness: TightnessWitness,
    d: int,
    p: MetricP,
    r: float,
    dist: DistributionKind,
    estimate: CollisionEstimate,
    bound: float,
) -> BoundRow:
    """Row whose rate is the non-collision rate of the witness and the origin."""
    misses = estimate.non_collisions
    if witness.regime is TightnessRegime.P_GE_2:
        passed = misses == 0
    else:
        passed = wilson_lower(misses, estimate.trials) <= bound
    return BoundRow(
        d=d,
        p=str(p),
        c_over_tau=witness.claimed_norm / (r * tau(dist, d, p)),
        distribution=str(dist),
        trials=estimate.trials,
        rate=misses / estimate.trials,
        wilson_upper=wilson_upper(misses, estimate.trials),
        bound=bound,
        passed=passed,
    )


def check_tightness_pge2(  # noqa: PLR0913
    d: int,
    p: PLike,
    r: float,
    epsilon: float,
    trials: int,
    seed: int,
    dist: DistributionKind = DistributionKind.RADEMACHER,
    workers: int = 1,
) -> ValidationReport:
    """Every sampled function must put x0 next to the origin."""
    metric = MetricP.of(p)
    witness = tightness_witness_pge2(d, metric, r, epsilon)
    estimate = _count_collisions(
        witness.point,
        np.zeros(d),
        dist,
        r * rho_p(d, metric),
        trials,
        seed,
        workers,
    )
    return ValidationReport(
        title=f"tightness p>=2 (d={d}, p={metric})",
        workers=workers,
        seed=seed,
        rows=[_witness_row(witness, d, metric, r, dist, estimate, 0.0)],
    )


def check_tightness_plt2(  # noqa: PLR0913
    d: int,
    p: PLike,
    r: float,
    epsilon: float,
    trials: int,
    seed: int,
    dist: DistributionKind = DistributionKind.RADEMACHER,
    workers: int = 1,
) -> ValidationReport:
    """The non-collision rate of x1 must stay within the Hoeffding bound."""
    metric = MetricP.of(p)
    witness = tightness_witness_plt2(d, metric, r, epsilon)
    estimate = _count_collisions(
        witness.point,
        np.zeros(d),
        dist,
        r * rho_p(d, metric),
        trials,
        seed,
        workers,
    )
    bound = hoeffding_bound(d, epsilon)
    return ValidationReport(
        title=f"tightness p<2 (d={d}, p={metric}, epsilon={epsilon:g})",
        workers=workers,
        seed=seed,
        rows=[_witness_row(witness, d, metric, r, dist, estimate, bound)],
    )


BOUNDARY_MARGIN = 1e-9
"""Relative distance kept between generated queries and the r and c*r spheres."""


def _offsets(
    rng: np.random.Generator,
    count: int,
    d: int,
    p: MetricP,
    max_length: float,
) -> NDArray[np.float64]:
    directions = rng.standard_normal((count, d))
    directions /= lp_norm(directions, p, axis=1)[:, np.newaxis]
    return directions * rng.uniform(0.0, max_length, (count, 1))


def random_workload(
    params: AnalysisParams,
    n: int,
    num_queries: int,
    seed: int,
) -> tuple[Dataset, NDArray[np.float64]]:
    """Clustered points and queries with both near and far neighbours.

    A quarter of the points are cluster anchors; the rest and all queries lie
    within 1.5 * c * r of an anchor. Queries with a point within
    BOUNDARY_MARGIN (relative) of distance r or c * r are redrawn.

    Raises:
        AdmissibilityError: if n < 1 or num_queries < 0.

    """
    if n < 1 or num_queries < 0:
        msg = (
            "random workload needs n >= 1 and queries >= 0, "
            f"got n={n}, queries={num_queries}"
        )
        raise AdmissibilityError(msg)
    rng = make_rng(seed)
    d, p = params.d, params.p
    spread = 1.5 * params.far_radius
    anchors = rng.standard_normal((max(1, n // 4), d)) * 4.0 * params.far_radius
    members = anchors[rng.integers(0, len(anchors), n - len(anchors))]
    points = np.concatenate(
        [anchors, members + _offsets(rng, len(members), d, p, spread)],
    )
    dataset = Dataset(points)
    radii = np.array([params.r, params.far_radius])
    queries: list[NDArray[np.float64]] = []
    while len(queries) < num_queries:
        q = anchors[rng.integers(0, len(anchors))]
        q = q + _offsets(rng, 1, d, p, params.far_radius)[0]
        distances = lp_distances(dataset.points, q, p)
        gaps = np.abs(distances[:, np.newaxis] - radii) / radii
        if np.all(gaps > BOUNDARY_MARGIN):
            queries.append(q)
    return dataset, np.asarray(queries, dtype=np.float64).reshape(num_queries, d)


class SandwichFailure(BaseModel):
    """A query whose result broke near subset-of result subset-of far."""

    query: int
    missing_near: list[int]
    beyond_far: list[int]


class SandwichReport(BaseModel):
    """Oracle comparison over a batch of queries."""

    total: int
    failures: list[SandwichFailure] = Field(default_factory=list)
    mean_candidates: float = 0.0
    mean_far_candidates: float = 0.0

    @property
    def passed_count(self) -> int:
        """Queries satisfying the sandwich property."""
        return self.total - len(self.failures)

    @property
    def passed(self) -> bool:
        """True when every query passed."""
        return not self.failures

    @property
    def summary(self) -> str:
        """E.g. "sandwich: 100/100 pass"."""
        return f"sandwich: {self.passed_count}/{self.total} pass"


def check_sandwich(
    index: Index,
    queries: Sequence[ArrayLike],
    threads: int = 1,
) -> SandwichReport:
    """Compare index results with the linear-scan oracle for every query."""
    params = index.params
    results = query_many(index, queries, threads)
    failures: list[SandwichFailure] = []
    for number, (q, result) in enumerate(zip(queries, results, strict=True)):
        near = brute_force_query(index.dataset, q, params.p, params.r, strict=True)
        far = brute_force_query(index.dataset, q, params.p, params.far_radius)
        reported = result.id_set
        if near <= reported <= far:
            continue
        failures.append(
            SandwichFailure(
                query=number,
                missing_near=sorted(near - reported),
                beyond_far=sorted(reported - far),
            ),
        )
    total = len(results)
    return SandwichReport(
        total=total,
        failures=failures,
        mean_candidates=(
            float(np.mean([r.candidates_scanned for r in results])) if total else 0.0
        ),
        mean_far_candidates=(
            float(np.mean([r.far_candidates for r in results])) if total else 0.0
        ),
    )


class FalsePositiveReport(BaseModel):
    """Mean far-candidate count per query over repeated builds vs n * p_fp^k."""

    builds: int
    queries: int
    k: int
    mean_far_candidates: float
    margin: float
    bound: float

    @property
    def passed(self) -> bool:
        """Mean minus the 99% margin does not exceed the bound."""
        return self.mean_far_candidates - self.margin <= self.bound


def check_expected_false_positives(  # noqa: PLR0913
    dataset: Dataset,
    params: AnalysisParams,
    mode: IndexMode,
    k: int,
    builds: int,
    queries: Sequence[ArrayLike],
    seed: int,
    threads: int = 1,
) -> FalsePositiveReport:
    """Average the far candidates per query over builds with varying seeds."""
    rng = make_rng(seed)
    per_build: list[float] = []
    for _ in range(builds):
        index = build(dataset, params, mode, k, seed=int(rng.integers(0, 2**63)))
        results = query_many(index, queries, threads)
        per_build.append(float(np.mean([r.far_candidates for r in results])))
    z = float(stats.norm.ppf(CONFIDENCE))
    spread = float(stats.sem(per_build)) if builds > 1 else 0.0
    return FalsePositiveReport(
        builds=builds,
        queries=len(queries),
        k=k,
        mean_far_candidates=float(np.mean(per_build)),
        margin=z * spread,
        bound=expected_false_positives(dataset.n, params.constants.p_fp, k),
    )


class PropertyCheck(BaseModel):
    """Violation count of a sampled inequality or implication."""

    name: str
    d: int
    p: str
    samples: int
    violations: int

    @property
    def passed(self) -> bool:
        """True when nothing was violated."""
        return self.violations == 0


def _random_vectors(
    rng: np.random.Generator,
    samples: int,
    d: int,
) -> NDArray[np.float64]:
    # mix of scales and sparse rows so the extremes of each inequality show up
    z = rng.standard_normal((samples, d)) * np.exp(rng.uniform(-5, 5, (samples, 1)))
    sparse = rng.random((samples, d)) < rng.random((samples, 1))
    return np.where(sparse, 0.0, z)


def check_norm_inequality(
    d: int,
    p: PLike,
    samples: int,
    seed: int,
) -> list[PropertyCheck]:
    """Sample the norm inequalities behind the hash family's bounds.

    * |z|_2 >= rho_p / max{d^(1/2), d^(1-1/p)} * |z|_p
    * |z|_1 <= rho_p * |z|_p
    * |z|_a <= |z|_b <= d^(1/b - 1/a) * |z|_a for b = min(p, 2), a = max(p, 2)
    """
    metric = MetricP.of(p)
    z = _random_vectors(make_rng(check_seed(seed)), samples, d)
    z = z[np.any(z != 0, axis=1)]
    norm_p = lp_norm(z, metric, axis=1)
    norm_1 = lp_norm(z, 1, axis=1)
    norm_2 = lp_norm(z, 2, axis=1)
    rho = rho_p(d, metric)
    slack = 1.0 + RELATIVE_TOLERANCE
    ratio = rho / max_scale(d, metric)
    if metric.is_infinite or metric.ord >= 2:  # noqa: PLR2004
        small, large, exponent = norm_p, norm_2, 0.5 - metric.inverse
    else:
        small, large, exponent = norm_2, norm_p, metric.inverse - 0.5
    label = str(metric)
    return [
        PropertyCheck(
            name="l2 >= rho_p / max_scale * lp",
            d=d,
            p=label,
            samples=len(z),
            violations=int(np.count_nonzero(norm_2 * slack < ratio * norm_p)),
        ),
        PropertyCheck(
            name="l1 <= rho_p * lp",
            d=d,
            p=label,
            samples=len(z),
            violations=int(np.count_nonzero(norm_1 > rho * norm_p * slack)),
        ),
        PropertyCheck(
            name="norm sandwich",
            d=d,
            p=label,
            samples=len(z),
            violations=int(
                np.count_nonzero(
                    (small > large * slack)
                    | (large > float(d) ** exponent * small * slack),
                ),
            ),
        ),
    ]


def check_projection_observations(  # noqa: PLR0913
    d: int,
    p: PLike,
    r: float,
    dist: DistributionKind,
    samples: int,
    seed: int,
) -> list[PropertyCheck]:
    """Sample (x, y, v) triples and test the three collision implications.

    * |h(x) - h(y)| <= 1 implies |<x - y, v>| < 2 * rho_p * r
    * |<x - y, v>| < rho_p * r implies |h(x) - h(y)| <= 1
    * |x - y|_p < r implies |h(x) - h(y)| <= 1
    """
    metric = MetricP.of(p)
    rng = make_rng(check_seed(seed))
    rho = rho_p(d, metric)
    denom = r * rho
    x = rng.standard_normal((samples, d)) * 3.0 * denom
    direction = rng.standard_normal((samples, d))
    direction /= lp_norm(direction, metric, axis=1)[:, np.newaxis]
    # distances from well inside r out to 3 * rho_p * r
    spread = rng.uniform(0.0, 3.0 * rho, (samples, 1)) * r
    y = x + direction * spread
    v = sample_components(dist, (samples, d), rng)
    hx = floor_checked(np.add.reduce(x * v, axis=1) / denom)
    hy = floor_checked(np.add.reduce(y * v, axis=1) / denom)
    dot = np.abs(np.add.reduce((x - y) * v, axis=1))
    close_keys = np.abs(hx - hy) <= 1
    tight = 1.0 - RELATIVE_TOLERANCE
    near = lp_norm(x - y, metric, axis=1) < r * tight
    label = str(metric)
    return [
        PropertyCheck(
            name="adjacent keys imply |<x-y,v>| < 2 rho_p r",
            d=d,
            p=label,
            samples=samples,
            violations=int(
                np.count_nonzero(close_keys & (dot >= 2.0 * denom / tight)),
            ),
        ),
        PropertyCheck(
            name="|<x-y,v>| < rho_p r implies adjacent keys",
            d=d,
            p=label,
            samples=samples,
            violations=int(np.count_nonzero((dot < denom * tight) & ~close_keys)),
        ),
        PropertyCheck(
            name="|x-y|_p < r implies adjacent keys",
            d=d,
            p=label,
            samples=samples,
            violations=int(np.count_nonzero(near & ~close_keys)),
        ),
    ]


class PropertyReport(BaseModel):
    """A group of sampled property checks."""

    title: str
    checks: list[PropertyCheck] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        """True when every check passed."""
        return all(check.passed for check in self.checks)
