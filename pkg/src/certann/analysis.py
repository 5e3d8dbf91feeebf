"""Closed-form analysis of the no-false-negative hash family.

Norms, the rho_p scaling factor, admissible approximation thresholds (tau),
false-positive probability bounds, the gamma exponent and the choice of the
number k of concatenated hash functions.

The false-positive bounds use the forms under which they are proven:
``1 - (1 - tau**2 / c**2)**2 / 3`` for the bounded uniform family and
``1 - (1 - tau / c)**2 / 2`` for the Rademacher family. The Rademacher bound is
also quoted elsewhere with ``tau**2 / c**2`` inside the square; both forms share
the c -> infinity limit of 1/2, and this module implements the linear form.
"""

import math
from dataclasses import dataclass
from enum import Enum, StrEnum
from functools import cached_property
from typing import ClassVar

import numpy as np
from numpy.typing import ArrayLike, NDArray

from certann.errors import (
    AdmissibilityError,
    DimensionMismatchError,
    KSelectionError,
)

LN3 = math.log(3.0)
"""The constant b = ln 3: each of the k hash values may shift by -1, 0 or +1."""


class _Infinity(Enum):
    INF = "inf"

    def __str__(self) -> str:
        return "inf"


@dataclass(frozen=True)
class MetricP:
    """The p of an l_p metric, p in [1, inf].

    Infinity is a distinguished value rather than a large float, so every
    formula can special-case it exactly.
    """

    value: float | _Infinity

    INFINITY: ClassVar["MetricP"]

    def __post_init__(self) -> None:
        """Validate p >= 1 and fold math.inf into the distinguished value."""
        if isinstance(self.value, _Infinity):
            return
        value = float(self.value)
        if math.isnan(value):
            msg = "p must be a number in [1, inf], got nan"
            raise AdmissibilityError(msg)
        if math.isinf(value) and value > 0:
            object.__setattr__(self, "value", _Infinity.INF)
            return
        if value < 1:
            msg = f"p must be in [1, inf], got {value}"
            raise AdmissibilityError(msg)
        object.__setattr__(self, "value", value)

    @classmethod
    def of(cls, p: "MetricP | float | str") -> "MetricP":
        """Coerce a float, a string such as "2" or "inf", or a MetricP."""
        if isinstance(p, MetricP):
            return p
        if isinstance(p, str):
            text = p.strip().lower()
            if text in {"inf", "infinity", "max"}:
                return cls.INFINITY
            try:
                return cls(float(text))
            except ValueError as err:
                msg = f"p must be a number in [1, inf] or 'inf', got {p!r}"
                raise AdmissibilityError(msg) from err
        return cls(p)

    @property
    def is_infinite(self) -> bool:
        """True for the l_inf (max) metric."""
        return isinstance(self.value, _Infinity)

    @property
    def inverse(self) -> float:
        """1/p, with 1/inf := 0."""
        if isinstance(self.value, _Infinity):
            return 0.0
        return 1.0 / self.value

    @property
    def exponent(self) -> float:
        """The exponent 1 - 1/p of rho_p; 1 for p = inf."""
        return 1.0 - self.inverse

    @property
    def ord(self) -> float:
        """The value to hand to numpy norm routines."""
        if isinstance(self.value, _Infinity):
            return math.inf
        return self.value

    def __float__(self) -> float:
        """Return p as a float (math.inf for the max metric)."""
        return self.ord

    def __str__(self) -> str:
        """Format p compactly, e.g. "2", "1.5" or "inf"."""
        if isinstance(self.value, _Infinity):
            return "inf"
        return f"{self.value:g}"


MetricP.INFINITY = MetricP(_Infinity.INF)

PLike = MetricP | float | str


class DistributionKind(StrEnum):
    """Distribution of the projection vector components."""

    BOUNDED_UNIFORM = "uniform"
    """Uniform on (-1, 1); alpha**2 = 1/3."""

    RADEMACHER = "rademacher"
    """+1 or -1, each with probability 1/2."""

    @property
    def alpha(self) -> float:
        """Standard deviation of a single component."""
        if self is DistributionKind.BOUNDED_UNIFORM:
            return math.sqrt(1.0 / 3.0)
        return 1.0

    @property
    def tau_factor(self) -> float:
        """Multiplier of max_scale in tau: 2/alpha or sqrt(8)."""
        if self is DistributionKind.BOUNDED_UNIFORM:
            return 2.0 / self.alpha
        return math.sqrt(8.0)

    @property
    def p_fp_limit(self) -> float:
        """Value of the false-positive bound as c grows without limit."""
        if self is DistributionKind.BOUNDED_UNIFORM:
            return 2.0 / 3.0
        return 0.5


def _check_dimension(d: int) -> None:
    if d < 1:
        msg = f"dimension d must be a positive integer, got {d}"
        raise AdmissibilityError(msg)


def rho_p(d: int, p: PLike) -> float:
    """Scaling factor d^(1 - 1/p), chosen so that |z|_1 <= rho_p * |z|_p."""
    _check_dimension(d)
    return float(d) ** MetricP.of(p).exponent


def lp_norm(z: ArrayLike, p: PLike, axis: int | None = None) -> NDArray[np.float64]:
    """l_p norm of a vector, or of every row when axis=1."""
    arr = np.asarray(z, dtype=np.float64)
    return np.asarray(np.linalg.norm(arr, ord=MetricP.of(p).ord, axis=axis))


def lp_distance(x: ArrayLike, y: ArrayLike, p: PLike) -> float:
    """Return |x - y|_p.

    Raises:
        DimensionMismatchError: if x and y have different dimensions.

    """
    xa = np.asarray(x, dtype=np.float64)
    ya = np.asarray(y, dtype=np.float64)
    if xa.shape != ya.shape:
        raise DimensionMismatchError(xa.size, ya.size)
    return float(lp_norm(xa - ya, p))


def lp_distances(
    points: NDArray[np.float64],
    q: ArrayLike,
    p: PLike,
) -> NDArray[np.float64]:
    """Distances from every row of points to q."""
    qa = np.asarray(q, dtype=np.float64)
    if points.ndim != 2 or points.shape[1] != qa.shape[-1]:  # noqa: PLR2004
        raise DimensionMismatchError(points.shape[-1], qa.shape[-1], "query")
    if points.shape[0] == 0:
        return np.zeros(0, dtype=np.float64)
    return lp_norm(points - qa, p, axis=1)


def max_scale(d: int, p: PLike) -> float:
    """Return max{d^(1/2), d^(1 - 1/p)}."""
    _check_dimension(d)
    return max(math.sqrt(d), float(d) ** MetricP.of(p).exponent)


def tau(dist: DistributionKind, d: int, p: PLike) -> float:
    """Smallest approximation factor for which the false-positive bound holds."""
    return dist.tau_factor * max_scale(d, p)


def p_fp_bound(dist: DistributionKind, c: float, tau: float) -> float:
    """Upper bound on P(|h(x) - h(y)| <= 1) for a pair farther than c*r.

    Raises:
        AdmissibilityError: if c <= tau.

    """
    if tau <= 0 or not c > tau:
        msg = (
            f"approximation factor below admissible threshold: c={c:.6g} "
            f"must exceed tau={tau:.6g}"
        )
        raise AdmissibilityError(msg)
    if dist is DistributionKind.BOUNDED_UNIFORM:
        return 1.0 - (1.0 - tau**2 / c**2) ** 2 / 3.0
    return 1.0 - (1.0 - tau / c) ** 2 / 2.0


def _check_probability(p_fp: float) -> None:
    if not 0.0 < p_fp < 1.0:
        msg = f"false-positive probability must be in (0, 1), got {p_fp}"
        raise AdmissibilityError(msg)


def gamma(p_fp: float) -> float:
    """Exponent ln3 / (-ln p_fp) governing preprocessing growth."""
    _check_probability(p_fp)
    return LN3 / -math.log(p_fp)


def gamma_upper_bound(tau: float, c: float) -> float:
    """Closed-form upper bound 2 ln3 / (1 - tau/c)^2 on gamma (Rademacher)."""
    if tau <= 0 or not c > tau:
        msg = f"c={c:.6g} must exceed tau={tau:.6g}"
        raise AdmissibilityError(msg)
    return 2.0 * LN3 / (1.0 - tau / c) ** 2


def _checked_k(value: float, what: str) -> int:
    k = math.ceil(value)
    if k < 1:
        msg = (
            f"dataset too small for automatic k ({what} gives k={k}); "
            "supply k manually"
        )
        raise KSelectionError(msg)
    return k


def choose_k_main(n: int, d: int, a: float) -> int:
    """Number of hash functions for the full-expansion index.

    k = ceil(ln(n*a/d) / a), which balances 3^k stored cells against the
    expected number n * p_fp^k of false positives.

    Args:
        n: number of indexed points.
        d: dimension.
        a: -ln p_fp.

    Raises:
        KSelectionError: if the formula gives k < 1.

    """
    if n < 1 or a <= 0:
        msg = f"dataset too small for automatic k (n={n}, a={a}); supply k manually"
        raise KSelectionError(msg)
    _check_dimension(d)
    return _checked_k(math.log(n * a / d) / a, "ln(n*a/d)/a")


def choose_k_light(n: int, a: float, b: float = LN3) -> int:
    """Number of hash functions for the light index: ceil(ln(n*a/b) / (a+b))."""
    if n < 1 or a <= 0 or b <= 0:
        msg = f"dataset too small for automatic k (n={n}, a={a}); supply k manually"
        raise KSelectionError(msg)
    return _checked_k(math.log(n * a / b) / (a + b), "ln(n*a/b)/(a+b)")


def expected_false_positives(n: int, p_fp: float, k: int) -> float:
    """Expected number of far candidates per query, n * p_fp^k."""
    _check_probability(p_fp)
    return n * p_fp**k


def light_query_exponent(a: float, b: float = LN3) -> float:
    """Exponent b/(a+b) of n in the light index's expected query time."""
    return b / (a + b)


def preprocessing_exponent(gamma_value: float) -> float:
    """Exponent 1 + gamma of n in the full-expansion preprocessing time."""
    return 1.0 + gamma_value


@dataclass(frozen=True)
class DerivedConstants:
    """Constants derived from AnalysisParams."""

    rho_p: float
    tau: float
    p_fp: float
    gamma: float
    a: float
    b: float = LN3


@dataclass(frozen=True)
class AnalysisParams:
    """Problem parameters (d, p, r, c, distribution).

    Construction fails unless c exceeds tau for the given distribution,
    dimension and metric, so every instance has meaningful bounds.
    """

    d: int
    p: MetricP
    r: float
    c: float
    dist: DistributionKind = DistributionKind.RADEMACHER

    def __post_init__(self) -> None:
        """Validate ranges and the c > tau admissibility condition."""
        object.__setattr__(self, "p", MetricP.of(self.p))
        object.__setattr__(self, "dist", DistributionKind(self.dist))
        _check_dimension(self.d)
        if not (self.r > 0 and math.isfinite(self.r)):
            msg = f"radius r must be a positive finite number, got {self.r}"
            raise AdmissibilityError(msg)
        threshold = tau(self.dist, self.d, self.p)
        if not (math.isfinite(self.c) and self.c > threshold):
            msg = (
                f"approximation factor below admissible threshold: c={self.c:.6g} "
                f"must exceed tau={threshold:.6g} for d={self.d}, p={self.p}, "
                f"distribution={self.dist}"
            )
            raise AdmissibilityError(msg)

    @cached_property
    def constants(self) -> DerivedConstants:
        """Derived rho_p, tau, p_fp, gamma, a and b."""
        return derive_constants(self)

    @property
    def far_radius(self) -> float:
        """c * r, the distance beyond which points are never reported."""
        return self.c * self.r


def derive_constants(params: AnalysisParams) -> DerivedConstants:
    """Compute rho_p, tau, p_fp, gamma, a = -ln p_fp and b = ln 3."""
    t = tau(params.dist, params.d, params.p)
    p_fp = p_fp_bound(params.dist, params.c, t)
    return DerivedConstants(
        rho_p=rho_p(params.d, params.p),
        tau=t,
        p_fp=p_fp,
        gamma=gamma(p_fp),
        a=-math.log(p_fp),
    )


@dataclass(frozen=True)
class CostModel:
    """Predicted cost of an index over n points with k hash functions."""

    n: int
    k: int
    cells: int
    expected_false_positives: float
    light_query_exponent: float
    preprocessing_exponent: float


def cost_model(params: AnalysisParams, n: int, k: int) -> CostModel:
    """Summarize 3^k, n * p_fp^k and the exponents of n for the given k."""
    consts = params.constants
    return CostModel(
        n=n,
        k=k,
        cells=3**k,
        expected_false_positives=expected_false_positives(n, consts.p_fp, k),
        light_query_exponent=light_query_exponent(consts.a, consts.b),
        preprocessing_exponent=preprocessing_exponent(consts.gamma),
    )
