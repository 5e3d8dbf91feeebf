"""Tests for the bench command."""

from certann.args import BenchArgs
from certann.commands.definitions import BenchCommand


class TestBenchCommand:
    def test_reports_throughput(self, index_file, points_csv, recording_ui):
        args = BenchArgs(index=index_file, queries=points_csv, threads=2)

        BenchCommand(args, recording_ui).execute()

        output = recording_ui.console.export_text()
        assert "queries/s" in output
        assert "buckets probed per query" in output
        assert "sandwich" not in output

    def test_oracle(self, index_file, points_csv, recording_ui):
        args = BenchArgs(
            index=index_file,
            queries=points_csv,
            oracle=True,
            threads=1,
        )

        BenchCommand(args, recording_ui).execute()

        assert "sandwich: 300/300 pass" in recording_ui.console.export_text()
