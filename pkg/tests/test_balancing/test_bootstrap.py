"""Tests for bootstrap sampling."""

import numpy as np
import pytest

from src.balancing.bootstrap import bootstrap
from src.core.errors import ConfigurationError
from tests.helpers import make_dataset


def _make_rows(n: int):
    return make_dataset(np.arange(n, dtype=float).reshape(-1, 1), [i % 2 for i in range(n)])


class TestBootstrap:
    def test_same_size_and_in_range(self):
        sample = bootstrap(_make_rows(50), seed=1)
        assert sample.rows.size == 50
        assert sample.rows.min() >= 0 and sample.rows.max() < 50

    def test_seeded(self):
        data = _make_rows(30)
        np.testing.assert_array_equal(bootstrap(data, 9).rows, bootstrap(data, 9).rows)
        assert not np.array_equal(bootstrap(data, 9).rows, bootstrap(data, 10).rows)

    def test_singleton(self):
        sample = bootstrap(make_dataset([[3.0]], [1]), seed=5)
        assert sample.rows.tolist() == [0]

    def test_mean_unique_fraction_near_one_minus_inverse_e(self):
        data = _make_rows(1000)
        fractions = [bootstrap(data, seed).unique_fraction for seed in range(300)]
        assert 0.62 <= np.mean(fractions) <= 0.65

    def test_materialize_follows_rows(self):
        data = _make_rows(10)
        sample = bootstrap(data, seed=2)
        view = sample.materialize(data)
        assert view.features.toarray().ravel().tolist() == sample.rows.astype(float).tolist()

    def test_empty_rejected(self):
        with pytest.raises(ConfigurationError):
            bootstrap(make_dataset(np.zeros((0, 1)), []), seed=0)
