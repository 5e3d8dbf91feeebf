import io
from collections.abc import Callable

import numpy as np
import pytest
from rich.console import Console

from certann.analysis import AnalysisParams, DistributionKind, tau
from certann.index import Dataset, Index, IndexMode, build
from certann.ui.console_ui import ConsoleUI

ParamsFactory = Callable[..., AnalysisParams]
IndexFactory = Callable[..., Index]


@pytest.fixture
def rng() -> np.random.Generator:
    """Seeded generator for test data."""
    return np.random.default_rng(20240611)


@pytest.fixture
def make_params() -> ParamsFactory:
    """Build AnalysisParams with c given as a multiple of tau."""

    def factory(
        d: int = 8,
        p: float | str = 2,
        r: float = 1.0,
        c_over_tau: float = 1.5,
        dist: DistributionKind = DistributionKind.RADEMACHER,
    ) -> AnalysisParams:
        return AnalysisParams(
            d=d,
            p=p,
            r=r,
            c=c_over_tau * tau(dist, d, p),
            dist=dist,
        )

    return factory


@pytest.fixture
def params(make_params) -> AnalysisParams:
    """d=8, l_2, r=1, c=1.5*tau, Rademacher."""
    return make_params()


@pytest.fixture
def gaussian_dataset(rng) -> Dataset:
    """300 standard normal points in 8 dimensions."""
    return Dataset(rng.standard_normal((300, 8)))


@pytest.fixture
def make_index(gaussian_dataset, params) -> IndexFactory:
    """Build an index over gaussian_dataset with explicit k."""

    def factory(
        mode: IndexMode = IndexMode.LIGHT,
        k: int = 3,
        seed: int = 11,
        dataset: Dataset | None = None,
        analysis: AnalysisParams | None = None,
    ) -> Index:
        return build(
            gaussian_dataset if dataset is None else dataset,
            params if analysis is None else analysis,
            mode,
            k,
            seed,
        )

    return factory


@pytest.fixture
def recording_ui() -> ConsoleUI:
    """ConsoleUI writing to in-memory consoles; read with export_text()."""
    return ConsoleUI(
        console=Console(file=io.StringIO(), record=True, width=200),
        err_console=Console(file=io.StringIO(), record=True, width=200),
    )
