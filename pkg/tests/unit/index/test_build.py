"""Tests for building indexes in both modes."""

import numpy as np
import pytest

from certann.analysis import AnalysisParams, choose_k_light, choose_k_main
from certann.errors import (
    CellBudgetExceededError,
    DimensionMismatchError,
    InvariantViolationError,
    KSelectionError,
)
from certann.hashing import hash_composite
from certann.index import Dataset, Index, IndexMode, build, resolve_k


class TestDataset:
    def test_points_are_frozen_float64(self):
        dataset = Dataset(np.array([[1, 2], [3, 4]]))

        assert dataset.points.dtype == np.float64
        assert not dataset.points.flags.writeable
        assert dataset.n == 2
        assert dataset.dim == 2
        assert len(dataset) == 2
        assert dataset.ids.tolist() == [0, 1]

    def test_copy_is_independent(self):
        source = np.zeros((2, 2))
        dataset = Dataset(source)
        source[0, 0] = 5.0

        assert dataset.points[0, 0] == 0.0

    def test_empty(self):
        dataset = Dataset.empty(3)

        assert dataset.n == 0
        assert dataset.dim == 3

    def test_rejects_vectors_and_zero_dimension(self):
        with pytest.raises(ValueError, match="dataset points"):
            Dataset(np.zeros(3))
        with pytest.raises(ValueError, match="dataset points"):
            Dataset(np.zeros((3, 0)))


class TestBuild:
    @pytest.mark.parametrize(
        ("mode", "references"),
        [(IndexMode.FULL_EXPANSION, 9), (IndexMode.LIGHT, 1)],
    )
    def test_single_point_reference_counts(self, params, mode, references):
        """n=1, k=2: 3^2 references when expanded, 1 otherwise."""
        dataset = Dataset(np.ones((1, params.d)))

        index = build(dataset, params, mode, k=2, seed=3)

        assert index.meta.n_references == references
        assert len(index.buckets) == references
        assert all(ids == (0,) for ids in index.buckets.values())
        index.verify()

    def test_light_buckets_hold_own_key(self, make_index, gaussian_dataset):
        index = make_index(IndexMode.LIGHT)

        for key, ids in index.buckets.items():
            for point_id in ids:
                point = gaussian_dataset.points[point_id]
                assert hash_composite(index.g, point) == key

    def test_full_expansion_references(self, make_index, gaussian_dataset):
        index = make_index(IndexMode.FULL_EXPANSION, k=3)

        assert index.meta.n_references == gaussian_dataset.n * 27
        index.verify()

    def test_ids_ascending_within_buckets(self, make_index):
        for mode in IndexMode:
            index = make_index(mode)
            for ids in index.buckets.values():
                assert list(ids) == sorted(set(ids))

    def test_deterministic(self, make_index):
        first = make_index(IndexMode.FULL_EXPANSION, seed=5)
        second = make_index(IndexMode.FULL_EXPANSION, seed=5)

        assert first.buckets == second.buckets

    def test_meta(self, make_index, gaussian_dataset):
        index = make_index(IndexMode.LIGHT, k=2, seed=77)

        assert index.meta.seed == 77
        assert index.meta.k == 2
        assert index.meta.n_points == gaussian_dataset.n
        assert index.meta.build_time is not None

    def test_dimension_mismatch(self, params):
        with pytest.raises(DimensionMismatchError):
            build(Dataset(np.zeros((3, params.d + 1))), params, k=1)

    def test_cell_budget(self, gaussian_dataset, params):
        with pytest.raises(CellBudgetExceededError):
            build(gaussian_dataset, params, k=5, cell_budget=100)

    def test_empty_dataset(self, params):
        index = build(Dataset.empty(params.d), params, IndexMode.FULL_EXPANSION, k=2)

        assert index.buckets == {}
        index.verify()


class TestAutomaticK:
    def test_uses_mode_specific_rule(self, params):
        dataset = Dataset(np.zeros((10_000, params.d)))
        consts = params.constants

        full = resolve_k(dataset, params, IndexMode.FULL_EXPANSION)
        light = resolve_k(dataset, params, IndexMode.LIGHT)

        assert full == choose_k_main(10_000, params.d, consts.a)
        assert light == choose_k_light(10_000, consts.a, consts.b)

    def test_too_small_dataset_fails(self, params):
        with pytest.raises(KSelectionError, match="supply k manually"):
            build(Dataset(np.zeros((1, params.d))), params, IndexMode.FULL_EXPANSION)

    def test_clamp_k(self, params, caplog):
        dataset = Dataset(np.zeros((1, params.d)))

        index = build(dataset, params, IndexMode.FULL_EXPANSION, clamp_k=True)

        assert index.k == 1
        assert "clamping to k=1" in caplog.text


class TestVerify:
    def test_detects_missing_references(self, make_index):
        index = make_index(IndexMode.FULL_EXPANSION, k=2)
        buckets = dict(index.buckets)
        buckets.pop(next(iter(buckets)))
        broken = Index(
            params=index.params,
            g=index.g,
            mode=index.mode,
            dataset=index.dataset,
            buckets=buckets,
        )

        with pytest.raises(InvariantViolationError, match="references"):
            broken.verify()

    def test_detects_duplicates(self, params):
        dataset = Dataset(np.zeros((2, params.d)))
        index = build(dataset, params, IndexMode.LIGHT, k=1)
        key = next(iter(index.buckets))
        broken = Index(
            params=params,
            g=index.g,
            mode=IndexMode.LIGHT,
            dataset=dataset,
            buckets={key: (0, 0)},
        )

        with pytest.raises(InvariantViolationError, match="duplicate"):
            broken.verify()

    def test_index_checks_hash_dimension(self, make_index, make_params):
        index = make_index()
        other: AnalysisParams = make_params(d=index.params.d + 1)

        with pytest.raises(DimensionMismatchError):
            Index(
                params=other,
                g=index.g,
                mode=index.mode,
                dataset=Dataset(np.zeros((1, other.d))),
                buckets={},
            )
