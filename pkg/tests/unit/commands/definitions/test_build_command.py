"""Tests for the build command."""

import pytest

from certann.args import BuildArgs
from certann.commands.definitions import BuildCommand
from certann.errors import AdmissibilityError, IngestError
from certann.index import IndexMode
from certann.persistence import load_index


class TestBuildCommand:
    def test_writes_index_and_summary(self, build_args, recording_ui):
        BuildCommand(build_args, recording_ui).execute()

        index = load_index(build_args.output)
        assert index.k == 3
        assert index.mode is IndexMode.LIGHT
        assert index.dataset.n == 300
        output = recording_ui.console.export_text()
        assert f"Index written to {build_args.output}" in output
        assert "cells 3^k" in output
        assert "27" in output

    def test_full_mode(self, build_args, recording_ui):
        build_args.mode = "full"

        BuildCommand(build_args, recording_ui).execute()

        index = load_index(build_args.output)
        assert index.mode is IndexMode.FULL_EXPANSION
        assert index.meta.n_references == 300 * 27

    def test_default_flags(self, points_csv, tmp_path, recording_ui):
        """Only the two paths: c = 2 * tau = 16 for d=8, k derived from n."""
        args = BuildArgs(dataset=points_csv, output=tmp_path / "default.idx")

        BuildCommand(args, recording_ui).execute()

        index = load_index(args.output)
        assert index.params.c == pytest.approx(16.0)
        assert index.k >= 1
        assert index.mode is IndexMode.LIGHT

    def test_c_below_tau(self, build_args, recording_ui):
        build_args.c = 2.0

        with pytest.raises(AdmissibilityError, match="tau=8"):
            BuildCommand(build_args, recording_ui).execute()
        assert not build_args.output.exists()

    def test_missing_dataset(self, build_args, recording_ui, tmp_path):
        build_args.dataset = tmp_path / "nothing.csv"

        with pytest.raises(IngestError, match="not found"):
            BuildCommand(build_args, recording_ui).execute()
