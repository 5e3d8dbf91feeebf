"""Tests for the query command."""

import pytest

from certann.args import QueryArgs
from certann.commands.definitions import QueryCommand
from certann.errors import DimensionMismatchError
from certann.ingest import ingest


class TestQueryCommand:
    def test_literal_query(self, index_file, points_csv, recording_ui):
        point = ingest(points_csv).points[4]
        literal = ",".join(repr(float(x)) for x in point)

        QueryCommand(QueryArgs(index=index_file, query=literal), recording_ui).execute()

        lines = recording_ui.console.export_text().splitlines()
        assert "4 0" in lines
        assert not any(line.startswith("#") for line in lines)

    def test_query_file(self, index_file, points_csv, recording_ui):
        args = QueryArgs(index=index_file, query=str(points_csv))

        QueryCommand(args, recording_ui).execute()

        output = recording_ui.console.export_text()
        assert "# query 0:" in output
        assert "# query 299:" in output

    def test_wrong_dimension(self, index_file, recording_ui):
        args = QueryArgs(index=index_file, query="1,2,3")

        with pytest.raises(DimensionMismatchError, match="query of dimension 8"):
            QueryCommand(args, recording_ui).execute()
