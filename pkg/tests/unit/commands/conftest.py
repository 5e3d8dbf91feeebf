import io
from pathlib import Path

import pytest
from rich.console import Console

from certann.args import BuildArgs
from certann.commands.definitions import BuildCommand
from certann.index import Dataset
from certann.ingest import write_csv
from certann.ui.console_ui import ConsoleUI


@pytest.fixture
def points_csv(tmp_path, gaussian_dataset: Dataset) -> Path:
    """gaussian_dataset as a CSV file."""
    return write_csv(gaussian_dataset, tmp_path / "points.csv")


@pytest.fixture
def build_args(points_csv, tmp_path) -> BuildArgs:
    """l_2, d=8 (tau=8), c=12, k=3, light mode."""
    return BuildArgs(
        dataset=points_csv,
        output=tmp_path / "points.idx",
        c=12.0,
        k=3,
        seed=5,
        threads=1,
    )


@pytest.fixture
def index_file(build_args) -> Path:
    """Index built from points_csv; its build output is discarded."""
    quiet = ConsoleUI(
        console=Console(file=io.StringIO()),
        err_console=Console(file=io.StringIO()),
    )
    BuildCommand(build_args, quiet).execute()
    return build_args.output
