"""Implement the bench command: query throughput and the oracle comparison."""

import time
from typing import override

import numpy as np
from pydantic import BaseModel
from rich.console import Console
from rich.table import Table

from certann.analysis import expected_false_positives
from certann.args import BenchArgs
from certann.commands.base_command import Command
from certann.errors import InvariantViolationError
from certann.index import query_many
from certann.ingest import ingest
from certann.log import get_logger
from certann.persistence import load_index
from certann.ui.colors import Styles
from certann.ui.console_ui import ConsoleUI, format_number
from certann.ui.render_protocol import register_renderer
from certann.ui.validation_renderers import render_sandwich_report
from certann.validation import SandwichReport, check_sandwich

logger = get_logger(__name__)


class BenchReport(BaseModel):
    """Throughput and candidate statistics of a batch of queries."""

    queries: int
    threads: int
    seconds: float
    mean_candidates: float
    max_candidates: int
    mean_results: float
    mean_far_candidates: float
    expected_far_candidates: float
    buckets_probed: int
    sandwich: SandwichReport | None = None

    @property
    def throughput(self) -> float:
        """Queries per second."""
        return self.queries / self.seconds if self.seconds > 0 else float("inf")


@register_renderer
def render_bench_report(obj: BenchReport, console: Console) -> None:
    """Throughput table, followed by the sandwich summary when present."""
    table = Table(
        title="Benchmark",
        title_style=Styles.RICH_HEADING,
        show_header=False,
    )
    table.add_column("name", style=Styles.RICH_DIM)
    table.add_column("value", style=Styles.RICH_INFO)
    table.add_row("queries", str(obj.queries))
    table.add_row("threads", str(obj.threads))
    table.add_row("seconds", format_number(obj.seconds))
    table.add_row("queries/s", format_number(obj.throughput))
    table.add_row("buckets probed per query", str(obj.buckets_probed))
    table.add_row("mean candidates", format_number(obj.mean_candidates))
    table.add_row("max candidates", str(obj.max_candidates))
    table.add_row("mean results", format_number(obj.mean_results))
    table.add_row("mean far candidates", format_number(obj.mean_far_candidates))
    table.add_row(
        "expected far candidates n*p_fp^k",
        format_number(obj.expected_far_candidates),
    )
    console.print(table)
    if obj.sandwich is not None:
        render_sandwich_report(obj.sandwich, console)


class BenchCommand(Command):
    """Time a batch of queries and optionally check them against a linear scan."""

    def __init__(self, args: BenchArgs, ui: ConsoleUI) -> None:
        """Initialize with parsed bench arguments."""
        super().__init__(ui)
        self.args = args

    @override
    def execute(self) -> None:
        """Run the queries on the thread pool and print the statistics.

        Raises:
            InvariantViolationError: if --oracle finds a query whose result is
                not between the near and far linear-scan sets.

        """
        index = load_index(self.args.index)
        queries = ingest(self.args.queries, self.args.fmt).points
        threads = max(1, self.args.threads)
        start = time.perf_counter()
        results = query_many(index, queries, threads)
        seconds = time.perf_counter() - start
        # ingest rejects empty files, so there is at least one query
        candidates = np.array([r.candidates_scanned for r in results])
        report = BenchReport(
            queries=len(results),
            threads=threads,
            seconds=seconds,
            mean_candidates=float(candidates.mean()),
            max_candidates=int(candidates.max()),
            mean_results=float(np.mean([len(r.ids) for r in results])),
            mean_far_candidates=float(np.mean([r.far_candidates for r in results])),
            expected_far_candidates=expected_false_positives(
                index.dataset.n,
                index.consts.p_fp,
                index.k,
            ),
            buckets_probed=results[0].buckets_probed,
        )
        if self.args.oracle:
            report.sandwich = check_sandwich(index, list(queries), threads)
        self.ui.display(report)
        if report.sandwich is not None and not report.sandwich.passed:
            msg = f"oracle comparison failed, {report.sandwich.summary}"
            raise InvariantViolationError(msg)
