"""Implement the query command."""

from typing import override

from pydantic import BaseModel
from rich.console import Console

from certann.args import QueryArgs
from certann.commands.base_command import Command
from certann.index import QueryResult, query_many
from certann.ingest import read_queries
from certann.log import get_logger
from certann.persistence import load_index
from certann.ui.colors import Styles
from certann.ui.console_ui import ConsoleUI, format_number
from certann.ui.render_protocol import register_renderer

logger = get_logger(__name__)


class QueryOutput(BaseModel):
    """Results of one or more queries, in input order."""

    results: list[QueryResult]


@register_renderer
def render_query_output(obj: QueryOutput, console: Console) -> None:
    """One "id distance" line per reported point, closest first.

    Several queries are separated by "# query i" headers.
    """
    many = len(obj.results) > 1
    for number, result in enumerate(obj.results):
        if many:
            console.print(
                f"# query {number}: {len(result.ids)} results",
                style=Styles.RICH_DIM,
            )
        for point_id, distance in zip(result.ids, result.distances, strict=True):
            console.print(f"{point_id} {format_number(distance)}")


class QueryCommand(Command):
    """Load an index and report the points near each query vector."""

    def __init__(self, args: QueryArgs, ui: ConsoleUI) -> None:
        """Initialize with parsed query arguments."""
        super().__init__(ui)
        self.args = args

    @override
    def execute(self) -> None:
        """Answer every query vector."""
        index = load_index(self.args.index)
        queries = read_queries(self.args.query, self.args.fmt)
        results = query_many(index, queries)
        logger.debug("Answered %d queries", len(results))
        self.ui.display(QueryOutput(results=results))
