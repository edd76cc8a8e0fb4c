"""Tests for the shared k-nearest-neighbor search."""

import numpy as np
import pytest

from src.core.neighbors import k_nearest


def _column(values):
    return np.asarray(values, dtype=np.float64).reshape(-1, 1)


class TestKNearest:
    def test_linear_scan_order(self):
        ref = _column([0.0, 1.0, 0.3, 0.5, 2.0])
        idx, dist = k_nearest(_column([0.4]), ref, k=2)
        assert sorted(idx[0].tolist()) == [2, 3]
        np.testing.assert_allclose(sorted(dist[0]), [0.1, 0.1], atol=1e-12)

    def test_equal_distances_prefer_lower_index(self):
        ref = _column([1.0, -1.0, 1.0, -1.0])
        idx, _ = k_nearest(_column([0.0]), ref, k=3)
        assert idx[0].tolist() == [0, 1, 2]

    def test_exclude_self(self):
        ref = _column([0.0, 1.0, 5.0])
        idx, _ = k_nearest(ref, ref, k=1, exclude_self=True)
        assert idx.ravel().tolist() == [1, 0, 1]

    def test_duplicates_still_count_with_exclude_self(self):
        ref = _column([2.0, 2.0, 9.0])
        idx, dist = k_nearest(ref, ref, k=1, exclude_self=True)
        assert idx[0, 0] == 1
        assert dist[0, 0] == 0.0

    def test_chunking_matches_single_pass(self):
        rng = np.random.default_rng(0)
        ref = rng.normal(size=(40, 3))
        queries = rng.normal(size=(25, 3))
        a = k_nearest(queries, ref, k=4, chunk_size=7)
        b = k_nearest(queries, ref, k=4, chunk_size=1000)
        np.testing.assert_array_equal(a[0], b[0])
        np.testing.assert_allclose(a[1], b[1])

    def test_k_equal_to_reference_size(self):
        idx, _ = k_nearest(_column([0.0]), _column([3.0, 1.0, 2.0]), k=3)
        assert idx[0].tolist() == [1, 2, 0]

    @pytest.mark.parametrize("k", [0, 4])
    def test_k_out_of_range(self, k):
        with pytest.raises(ValueError):
            k_nearest(_column([0.0]), _column([1.0, 2.0, 3.0]), k=k)

    def test_exclude_self_reduces_available(self):
        ref = _column([1.0, 2.0])
        with pytest.raises(ValueError):
            k_nearest(ref, ref, k=2, exclude_self=True)
