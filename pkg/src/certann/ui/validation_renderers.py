"""Renderers for the validation reports."""

from rich.console import Console
from rich.table import Table

from certann.ui.colors import Styles
from certann.ui.console_ui import format_number
from certann.ui.render_protocol import register_renderer
from certann.validation import (
    FalsePositiveReport,
    PropertyReport,
    SandwichReport,
    ValidationReport,
)


def _verdict(*, passed: bool) -> str:
    style = Styles.verdict(passed=passed)
    return f"[{style}]{'pass' if passed else 'FAIL'}[/{style}]"


@register_renderer
def render_sandwich_report(obj: SandwichReport, console: Console) -> None:
    """List failing queries, then the pass count."""
    for failure in obj.failures:
        console.print(
            f"query {failure.query}: FAIL, missing near ids {failure.missing_near}, "
            f"ids beyond c*r {failure.beyond_far}",
            style=Styles.RICH_FAIL,
            highlight=False,
        )
    console.print(obj.summary, style=Styles.verdict(passed=obj.passed))


@register_renderer
def render_validation_report(obj: ValidationReport, console: Console) -> None:
    """One table row per check.

    Bounds above 1 (a vacuous Hoeffding bound) are shown as 1.
    """
    table = Table(title=obj.title, title_style=Styles.RICH_HEADING)
    for column in (
        "d",
        "p",
        "c/tau",
        "distribution",
        "trials",
        "rate",
        "wilson upper",
        "bound",
        "",
    ):
        table.add_column(column, justify="right")
    for row in obj.rows:
        table.add_row(
            str(row.d),
            row.p,
            format_number(row.c_over_tau),
            row.distribution,
            str(row.trials),
            format_number(row.rate),
            format_number(row.wilson_upper),
            format_number(min(row.bound, 1.0)),
            _verdict(passed=row.passed),
        )
    console.print(table)
    passed = len(obj.rows) - len(obj.violations)
    console.print(
        f"{passed}/{len(obj.rows)} pass (seed {obj.seed}, {obj.workers} workers)",
        style=Styles.verdict(passed=obj.passed),
    )


@register_renderer
def render_false_positive_report(obj: FalsePositiveReport, console: Console) -> None:
    """Mean far candidates against n * p_fp^k."""
    console.print(
        f"far candidates per query over {obj.builds} builds x {obj.queries} "
        f"queries (k={obj.k}): mean {format_number(obj.mean_far_candidates)} "
        f"+/- {format_number(obj.margin)}, bound n*p_fp^k = "
        f"{format_number(obj.bound)} {_verdict(passed=obj.passed)}",
    )


@register_renderer
def render_property_report(obj: PropertyReport, console: Console) -> None:
    """Violation counts per sampled property."""
    table = Table(title=obj.title, title_style=Styles.RICH_HEADING)
    for column in ("property", "d", "p", "samples", "violations", ""):
        table.add_column(column)
    for check in obj.checks:
        table.add_row(
            check.name,
            str(check.d),
            check.p,
            str(check.samples),
            str(check.violations),
            _verdict(passed=check.passed),
        )
    console.print(table)
