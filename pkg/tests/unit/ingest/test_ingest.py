"""Tests for dataset ingestion."""

import struct

import numpy as np
import pytest

from certann.errors import IngestError
from certann.index import Dataset
from certann.ingest import (
    IngestFormat,
    ingest,
    parse_vector,
    read_queries,
    write_csv,
    write_fvec,
)


def fvec_record(values: list[float], dim: int | None = None) -> bytes:
    count = len(values) if dim is None else dim
    return struct.pack(f"<I{len(values)}f", count, *values)


class TestCsv:
    def test_reads_rows(self, tmp_path):
        path = tmp_path / "points.csv"
        path.write_text("1.0,2.0\n3.0,4.0\n")

        dataset = ingest(path)

        assert dataset.n == 2
        assert dataset.dim == 2
        np.testing.assert_array_equal(dataset.points, [[1.0, 2.0], [3.0, 4.0]])

    def test_skips_blank_lines(self, tmp_path):
        path = tmp_path / "points.csv"
        path.write_text("1, 2\n\n3, 4\n  \n")

        assert ingest(path).n == 2

    def test_ragged_row_names_line(self, tmp_path):
        path = tmp_path / "points.csv"
        path.write_text("1.0,2.0\n3.0\n")

        expected = "line 2: expected 2 values, got 1"
        with pytest.raises(IngestError, match=expected) as err:
            ingest(path)
        assert err.value.location == 2

    def test_non_numeric(self, tmp_path):
        path = tmp_path / "points.csv"
        path.write_text("1.0,2.0\n3.0,abc\n")

        with pytest.raises(IngestError, match="line 2: non-numeric value 'abc'"):
            ingest(path)

    def test_non_finite(self, tmp_path):
        path = tmp_path / "points.csv"
        path.write_text("nan,2.0\n")

        with pytest.raises(IngestError, match="line 1: non-finite"):
            ingest(path)

    def test_empty_file(self, tmp_path):
        path = tmp_path / "points.csv"
        path.write_text("\n\n")

        with pytest.raises(IngestError, match="empty dataset"):
            ingest(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(IngestError, match="not found"):
            ingest(tmp_path / "absent.csv")

    def test_written_file_reads_back_exactly(self, tmp_path, rng):
        dataset = Dataset(rng.standard_normal((20, 3)))

        loaded = ingest(write_csv(dataset, tmp_path / "out.csv"))

        np.testing.assert_array_equal(loaded.points, dataset.points)


class TestFvec:
    def test_reads_records(self, tmp_path):
        path = tmp_path / "points.fvec"
        path.write_bytes(fvec_record([1.0, 2.0, 3.0]) + fvec_record([4.0, 5.0, 6.0]))

        dataset = ingest(path, IngestFormat.FVEC)

        assert dataset.n == 2
        np.testing.assert_array_equal(dataset.points[1], [4.0, 5.0, 6.0])

    def test_float32_values(self, tmp_path, rng):
        dataset = Dataset(rng.standard_normal((10, 4)).astype(np.float32))

        loaded = ingest(write_fvec(dataset, tmp_path / "out.fvec"), "fvec")

        np.testing.assert_array_equal(loaded.points, dataset.points)

    def test_mismatched_dimension(self, tmp_path):
        path = tmp_path / "points.fvec"
        path.write_bytes(fvec_record([1.0, 2.0]) + fvec_record([3.0, 4.0], dim=5))

        with pytest.raises(IngestError, match="record 2: dimension 5 differs from 2"):
            ingest(path, IngestFormat.FVEC)

    def test_truncated_record(self, tmp_path):
        path = tmp_path / "points.fvec"
        path.write_bytes(fvec_record([1.0, 2.0]) + fvec_record([3.0, 4.0])[:-2])

        with pytest.raises(IngestError, match="record 2: truncated"):
            ingest(path, IngestFormat.FVEC)

    def test_zero_dimension(self, tmp_path):
        path = tmp_path / "points.fvec"
        path.write_bytes(struct.pack("<I", 0))

        with pytest.raises(IngestError, match="dimension must be positive"):
            ingest(path, IngestFormat.FVEC)

    def test_non_finite(self, tmp_path):
        path = tmp_path / "points.fvec"
        path.write_bytes(fvec_record([1.0, 2.0]) + fvec_record([float("inf"), 0.0]))

        with pytest.raises(IngestError, match="record 2: non-finite"):
            ingest(path, IngestFormat.FVEC)

    def test_empty_file(self, tmp_path):
        path = tmp_path / "points.fvec"
        path.write_bytes(b"")

        with pytest.raises(IngestError, match="empty dataset"):
            ingest(path, IngestFormat.FVEC)


class TestQueries:
    def test_literal_vector(self):
        np.testing.assert_array_equal(parse_vector("1,2.5,-3"), [1.0, 2.5, -3.0])

    def test_literal_in_read_queries(self):
        assert read_queries("0.5,0.5").shape == (1, 2)

    def test_file_in_read_queries(self, tmp_path):
        path = tmp_path / "q.csv"
        path.write_text("1,2\n3,4\n5,6\n")

        assert read_queries(str(path)).shape == (3, 2)

    def test_bad_literal(self):
        with pytest.raises(IngestError, match="non-numeric"):
            parse_vector("1,x")
