"""Parse command line arguments into one typed class per subcommand."""

import sys
from collections.abc import Callable
from pathlib import Path
from typing import Literal, override

import typed_argparse as tap

from certann.config import DEFAULT_C_OVER_TAU, Config, default_threads
from certann.index import DEFAULT_CELL_BUDGET

DistributionName = Literal["uniform", "rademacher"]
ModeName = Literal["full", "light"]
FormatName = Literal["csv", "fvec"]
SuiteName = Literal["bounds", "tightness", "sandwich", "norms", "false-positives"]


class CommonArgs(tap.TypedArgs):
    """Flags accepted by every subcommand."""

    verbose: bool = tap.arg(help="Enables verbose (DEBUG) logging", default=False)


class ParamArgs(CommonArgs):
    """Index and hash family parameters."""

    p: str = tap.arg(
        "--p",
        help="Exponent of the l_p metric, a number >= 1 or 'inf'",
        default="2",
    )
    radius: float = tap.arg("--radius", help="Near radius r", default=1.0)
    dist: DistributionName = tap.arg(
        "--dist",
        help="Distribution of projection components",
        default="rademacher",
    )
    mode: ModeName = tap.arg(
        "--mode",
        help="full: 3^k cells per point, one probe; light: one cell, 3^k probes",
        default="light",
    )
    k: int | None = tap.arg(
        "--k",
        help="Number of hash functions (derived from n when omitted)",
        default=None,
    )
    seed: int = tap.arg("--seed", help="Seed of the projection vectors", default=0)
    cell_budget: int = tap.arg(
        "--cell-budget",
        help="Cap on 3^k",
        default=DEFAULT_CELL_BUDGET,
    )
    threads: int = tap.arg(
        "--threads",
        help="Worker threads (default: all cores)",
        default=default_threads(),
    )
    clamp_k: bool = tap.arg(
        "--clamp-k",
        help="Use k=1 instead of failing when the dataset is too small",
        default=False,
    )

    def to_config(self) -> Config:
        """Validate the parameter flags."""
        return Config.create(**self.param_values())

    def param_values(self) -> dict[str, object]:
        """Flag values under their Config field names."""
        return {
            "p": self.p,
            "r": self.radius,
            "distribution": self.dist,
            "mode": self.mode,
            "k": self.k,
            "seed": self.seed,
            "cell_budget": self.cell_budget,
            "threads": self.threads,
            "clamp_k": self.clamp_k,
        }


class BuildArgs(ParamArgs):
    """certann build."""

    dataset: Path = tap.arg(positional=True, help="Dataset file")
    output: Path = tap.arg(positional=True, help="Index file to write")
    c: float | None = tap.arg(
        "--c",
        help="Approximation factor; must exceed the threshold tau",
        default=None,
    )
    c_over_tau: float = tap.arg(
        "--c-over-tau",
        help="Approximation factor as a multiple of tau, used when --c is not given",
        default=DEFAULT_C_OVER_TAU,
    )
    fmt: FormatName = tap.arg(
        "--format",
        help="Dataset file format",
        default="csv",
    )

    @override
    def param_values(self) -> dict[str, object]:
        """Parameter flags plus the approximation factor."""
        return {
            **super().param_values(),
            "c": self.c,
            "c_over_tau": self.c_over_tau,
        }


class QueryArgs(CommonArgs):
    """certann query."""

    index: Path = tap.arg(positional=True, help="Index file")
    query: str = tap.arg(
        positional=True,
        help="Query vector such as '0.5,1,2' or a file of query vectors",
    )
    fmt: FormatName = tap.arg(
        "--format",
        help="Format of a query file",
        default="csv",
    )


class BenchArgs(CommonArgs):
    """certann bench."""

    index: Path = tap.arg(positional=True, help="Index file")
    queries: Path = tap.arg(positional=True, help="File of query vectors")
    fmt: FormatName = tap.arg(
        "--format",
        help="Format of the query file",
        default="csv",
    )
    oracle: bool = tap.arg(
        "--oracle",
        help="Compare every result with an exact linear scan",
        default=False,
    )
    threads: int = tap.arg(
        "--threads",
        help="Worker threads (default: all cores)",
        default=default_threads(),
    )


class ValidateArgs(ParamArgs):
    """certann validate."""

    suite: SuiteName = tap.arg(positional=True, help="Which checks to run")
    d: list[int] = tap.arg(
        "--d",
        nargs="+",
        help="Dimensions to check",
        default=[4, 16, 64],
    )
    c_over_tau: list[float] = tap.arg(
        "--c-over-tau",
        nargs="+",
        help="Approximation factors as multiples of tau",
        default=[1.5, 3.0],
    )
    trials: int = tap.arg(
        "--trials",
        help="Hash functions sampled per estimate",
        default=100_000,
    )
    pairs: int = tap.arg("--pairs", help="Far pairs per parameter cell", default=50)
    epsilon: float = tap.arg(
        "--epsilon",
        help="Distance below the threshold for tightness witnesses",
        default=0.1,
    )
    n: int = tap.arg(
        "--n",
        help="Points in the random dataset of the sandwich suite",
        default=5_000,
    )
    queries: int = tap.arg(
        "--queries",
        help="Queries in the sandwich suite",
        default=100,
    )
    builds: int = tap.arg(
        "--builds",
        help="Index builds averaged by the false-positives suite",
        default=30,
    )
    csv: Path | None = tap.arg(
        "--csv",
        help="Also write the report rows to this CSV file",
        default=None,
    )


class VersionArgs(CommonArgs):
    """certann version."""


def bind_and_run(  # noqa: PLR0913
    run_build: Callable[[BuildArgs], None],
    run_query: Callable[[QueryArgs], None],
    run_bench: Callable[[BenchArgs], None],
    run_validate: Callable[[ValidateArgs], None],
    run_version: Callable[[VersionArgs], None],
    args: list[str] | None = None,
) -> None:
    """Parse args and run the runner bound to the chosen subcommand."""
    tap.Parser(
        tap.SubParserGroup(
            tap.SubParser("build", BuildArgs, help="Build and save an index"),
            tap.SubParser("query", QueryArgs, help="Query a saved index"),
            tap.SubParser(
                "bench",
                BenchArgs,
                help="Measure query throughput, optionally against the oracle",
            ),
            tap.SubParser(
                "validate",
                ValidateArgs,
                help="Run empirical checks of the collision bounds",
            ),
            tap.SubParser("version", VersionArgs, help="Show version and exit"),
        ),
        description="Approximate near-neighbor search in l_p with no false negatives",
    ).bind(run_build, run_query, run_bench, run_validate, run_version).run(
        sys.argv[1:] if args is None else args,
    )
