"""Implement the build command: ingest a dataset, build an index and save it."""

from pathlib import Path
from typing import override

from pydantic import BaseModel
from rich.console import Console
from rich.table import Table

from certann.analysis import cost_model
from certann.args import BuildArgs
from certann.commands.base_command import Command
from certann.index import Index, build
from certann.ingest import ingest
from certann.log import get_logger
from certann.persistence import save_index
from certann.ui.colors import Styles
from certann.ui.console_ui import ConsoleUI, format_number
from certann.ui.render_protocol import register_renderer

logger = get_logger(__name__)


class BuildSummary(BaseModel):
    """What build prints after writing the index file."""

    path: Path
    mode: str
    n: int
    d: int
    p: str
    distribution: str
    r: float
    c: float
    seed: int
    k: int
    tau: float
    p_fp: float
    gamma: float
    cells: int
    buckets: int
    references: int
    expected_false_positives: float
    light_query_exponent: float
    preprocessing_exponent: float

    @classmethod
    def of(cls, index: Index, path: Path) -> "BuildSummary":
        """Collect the summary of a built index."""
        params = index.params
        consts = params.constants
        costs = cost_model(params, index.dataset.n, index.k)
        return cls(
            path=path,
            mode=str(index.mode),
            n=index.dataset.n,
            d=params.d,
            p=str(params.p),
            distribution=str(params.dist),
            r=params.r,
            c=params.c,
            seed=index.meta.seed,
            k=index.k,
            tau=consts.tau,
            p_fp=consts.p_fp,
            gamma=consts.gamma,
            cells=costs.cells,
            buckets=index.meta.n_buckets,
            references=index.meta.n_references,
            expected_false_positives=costs.expected_false_positives,
            light_query_exponent=costs.light_query_exponent,
            preprocessing_exponent=costs.preprocessing_exponent,
        )


@register_renderer
def render_build_summary(obj: BuildSummary, console: Console) -> None:
    """Print the key constants and cell counts as a two-column table."""
    table = Table(
        title=f"Index written to {obj.path}",
        title_style=Styles.RICH_HEADING,
        show_header=False,
    )
    table.add_column("name", style=Styles.RICH_DIM)
    table.add_column("value", style=Styles.RICH_INFO)
    rows: list[tuple[str, float | int | str]] = [
        ("mode", obj.mode),
        ("points (n)", obj.n),
        ("dimension (d)", obj.d),
        ("metric", f"l_{obj.p}"),
        ("distribution", obj.distribution),
        ("r", obj.r),
        ("c", obj.c),
        ("seed", obj.seed),
        ("k", obj.k),
        ("tau", obj.tau),
        ("p_fp", obj.p_fp),
        ("gamma", obj.gamma),
        ("cells 3^k", obj.cells),
        ("buckets", obj.buckets),
        ("references", obj.references),
        ("expected far candidates n*p_fp^k", obj.expected_false_positives),
        ("light query exponent", obj.light_query_exponent),
        ("full-expansion preprocessing exponent", obj.preprocessing_exponent),
    ]
    for name, value in rows:
        table.add_row(name, value if isinstance(value, str) else format_number(value))
    console.print(table)


class BuildCommand(Command):
    """Build an index from a dataset file and write it to disk."""

    def __init__(self, args: BuildArgs, ui: ConsoleUI) -> None:
        """Initialize with parsed build arguments."""
        super().__init__(ui)
        self.args = args

    @override
    def execute(self) -> None:
        """Build, verify and save the index, then print its summary."""
        config = self.args.to_config()
        dataset = ingest(self.args.dataset, self.args.fmt)
        params = config.analysis_params(dataset.dim)
        index = build(
            dataset,
            params,
            config.mode,
            config.k,
            config.seed,
            cell_budget=config.cell_budget,
            clamp_k=config.clamp_k,
        )
        index.verify()
        path = save_index(index, self.args.output)
        self.ui.display(BuildSummary.of(index, path))
