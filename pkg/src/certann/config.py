"""Validated runtime configuration shared by the CLI commands."""

import os

from pydantic import BaseModel, ConfigDict, Field, field_validator

from certann.analysis import AnalysisParams, DistributionKind, MetricP, tau
from certann.errors import ConfigError
from certann.hashing import MAX_SEED
from certann.index import DEFAULT_CELL_BUDGET, IndexMode

DEFAULT_C_OVER_TAU = 2.0


def default_threads() -> int:
    """All available cores."""
    return os.cpu_count() or 1


class Config(BaseModel):
    """Index and hashing parameters as given on the command line.

    The dimension is not part of the config; it comes from the dataset, so the
    c > tau check happens in analysis_params(). Without an explicit c the
    approximation factor is c_over_tau times the tau of that dimension.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    p: MetricP = MetricP(2.0)
    r: float = Field(default=1.0, gt=0, allow_inf_nan=False)
    c: float | None = Field(default=None, gt=0, allow_inf_nan=False)
    c_over_tau: float = Field(default=DEFAULT_C_OVER_TAU, gt=1, allow_inf_nan=False)
    distribution: DistributionKind = DistributionKind.RADEMACHER
    mode: IndexMode = IndexMode.LIGHT
    k: int | None = Field(default=None, ge=1)
    seed: int = Field(default=0, ge=0, le=MAX_SEED)
    cell_budget: int = Field(default=DEFAULT_CELL_BUDGET, ge=3)
    threads: int = Field(default_factory=default_threads, ge=1)
    clamp_k: bool = False

    @field_validator("p", mode="before")
    @classmethod
    def _parse_p(cls, value: object) -> MetricP:
        if isinstance(value, MetricP):
            return value
        if isinstance(value, int | float | str):
            return MetricP.of(value)
        msg = f"cannot interpret {value!r} as a metric exponent"
        raise ValueError(msg)

    @classmethod
    def create(cls, **values: object) -> "Config":
        """Validate values, turning pydantic errors into ConfigError."""
        try:
            return cls.model_validate(values)
        except ValueError as err:
            msg = f"invalid configuration: {err}"
            raise ConfigError(msg) from err

    def analysis_params(self, d: int) -> AnalysisParams:
        """Build AnalysisParams for dimension d, deriving c from tau if unset.

        Raises:
            AdmissibilityError: a ConfigError whose message carries the computed
                tau when c is not above it.

        """
        c = self.c
        if c is None:
            c = self.c_over_tau * tau(self.distribution, d, self.p)
        return AnalysisParams(
            d=d,
            p=self.p,
            r=self.r,
            c=c,
            dist=self.distribution,
        )
