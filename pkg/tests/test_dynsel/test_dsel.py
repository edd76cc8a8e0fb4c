"""Tests for DSEL carving, precomputation and regions of competence."""

import numpy as np
import pytest

from src.core.errors import ConfigurationError
from src.core.models import DselPolicy
from src.dynsel.dsel import (
    Dsel,
    build_dsel,
    carve_dsel,
    output_profiles,
    region_of_competence,
    regions_of_competence,
)
from tests.helpers import ColumnClassifier, ConstantClassifier, make_dataset, make_pool


def _make_line(values, labels):
    return make_dataset(np.asarray(values, dtype=float).reshape(-1, 1), labels)


def _make_line_dsel():
    data = _make_line([0.0, 1.0, 0.3, 0.5, 2.0], [0, 1, 0, 1, 1])
    return Dsel.precompute(data, make_pool([ConstantClassifier(1), ColumnClassifier(cut=0.4)]))


class TestCarveDsel:
    def test_quarter_of_hundred_rows(self):
        data = _make_line(np.arange(100), [0] * 80 + [1] * 20)
        pool_train, dsel_rows = carve_dsel(data, 0.25, seed=0)
        assert pool_train.n_rows == 75
        assert dsel_rows.n_rows == 25
        assert dsel_rows.positives == 5

    def test_disjoint(self):
        data = _make_line(np.arange(100), [0] * 80 + [1] * 20)
        pool_train, dsel_rows = carve_dsel(data, 0.25, seed=3)
        a = set(pool_train.features.toarray().ravel().tolist())
        b = set(dsel_rows.features.toarray().ravel().tolist())
        assert not a & b

    def test_too_few_dsel_rows(self):
        data = _make_line(np.arange(20), [0] * 15 + [1] * 5)
        with pytest.raises(ConfigurationError, match="DSEL rows"):
            carve_dsel(data, 0.25, seed=0, min_rows=7)

    def test_class_with_single_instance(self):
        data = _make_line(np.arange(10), [0] * 9 + [1])
        with pytest.raises(ConfigurationError):
            carve_dsel(data, 0.25, min_rows=1)

    def test_reuse_policy(self, toy_dataset):
        pool_train, dsel_rows = carve_dsel(toy_dataset, policy=DselPolicy.REUSE)
        assert pool_train is toy_dataset
        assert dsel_rows is toy_dataset


class TestBuildDsel:
    def test_pool_never_sees_dsel_rows(self, toy_dataset):
        seen = []

        def builder(rows):
            seen.append(rows)
            return make_pool([ConstantClassifier(0)])

        pool_train, dsel = build_dsel(toy_dataset, builder, dsel_fraction=0.25, seed=0, min_rows=2)
        assert len(seen) == 1 and seen[0] is pool_train
        assert pool_train.n_rows + dsel.size == toy_dataset.n_rows
        assert dsel.pool.n == 1

    def test_precomputed_outputs(self, blobs_dsel):
        m, n = blobs_dsel.size, blobs_dsel.pool.n
        assert blobs_dsel.predictions.shape == (m, n)
        assert blobs_dsel.supports.shape == (m, n, 2)
        np.testing.assert_array_equal(
            blobs_dsel.predictions, blobs_dsel.pool.predictions(blobs_dsel.data.features)
        )


class TestDselViews:
    def setup_method(self):
        self.dsel = _make_line_dsel()

    def test_correct_matrix(self):
        assert self.dsel.correct[:, 0].tolist() == [False, True, False, True, True]
        assert self.dsel.correct[:, 1].tolist() == [True, True, True, True, True]

    def test_true_class_support(self):
        np.testing.assert_allclose(self.dsel.true_class_support[:, 0], [0, 1, 0, 1, 1])

    def test_profiles(self):
        assert self.dsel.profile_matrix.shape == (5, 4)
        np.testing.assert_allclose(self.dsel.profile_matrix[0], [0, 1, 1, 0])
        np.testing.assert_allclose(output_profiles(self.dsel.supports), self.dsel.profile_matrix)


class TestRegionOfCompetence:
    def setup_method(self):
        self.dsel = _make_line_dsel()

    def test_query_on_dsel_row(self):
        region = region_of_competence(self.dsel, [1.0], k=1)
        assert region.indices.tolist() == [1]
        assert region.distances.tolist() == [0.0]

    def test_whole_dsel(self):
        region = region_of_competence(self.dsel, [0.0], k=5)
        assert sorted(region.indices.tolist()) == [0, 1, 2, 3, 4]

    def test_two_nearest_by_linear_scan(self):
        region = region_of_competence(self.dsel, [0.4], k=2)
        assert sorted(region.indices.tolist()) == [2, 3]

    def test_nearest_first(self):
        region = region_of_competence(self.dsel, [1.9], k=3)
        assert region.indices.tolist() == [4, 1, 3]

    def test_batched(self):
        indices, distances = regions_of_competence(self.dsel, [[0.0], [2.0]], k=2)
        assert indices.shape == distances.shape == (2, 2)

    @pytest.mark.parametrize("k", [0, 6])
    def test_k_bounds(self, k):
        with pytest.raises(ConfigurationError):
            region_of_competence(self.dsel, [0.0], k=k)
