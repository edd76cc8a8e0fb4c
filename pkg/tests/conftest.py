"""Shared test fixtures."""

import numpy as np
import pytest

from src.dataset.models import Dataset
from src.dataset.synthetic import make_blobs_dataset
from src.dynsel.dsel import Dsel, build_dsel
from src.pool.pool import build_pool
from tests.helpers import make_dataset


@pytest.fixture
def toy_dataset() -> Dataset:
    """20 rows on a line: negatives at 0..13, positives at 14..19."""
    x = np.arange(20, dtype=np.float64).reshape(-1, 1)
    y = np.array([0] * 14 + [1] * 6, dtype=np.int8)
    return make_dataset(x, y)


@pytest.fixture
def blobs() -> Dataset:
    return make_blobs_dataset(n=400, imbalance_ratio=9.0, n_features=2, separation=3.0, seed=7)


@pytest.fixture
def blobs_dsel(blobs) -> Dsel:
    """Five bagged trees with a DSEL hold-out carved from ``blobs``."""
    _, dsel = build_dsel(blobs, lambda rows: build_pool(rows, n=5, seed=1, n_jobs=1), seed=2)
    return dsel
