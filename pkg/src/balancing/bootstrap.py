"""Bootstrap sampling (uniform, with replacement, same size as the source)."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from src.core.errors import ConfigurationError
from src.dataset.models import Dataset


@dataclass
class BootstrapSample:
    """Row multiset drawn from a source dataset.

    ``balanced_view`` holds the SMOTE-balanced materialization when the
    sample went through Bootstrap-Based Balancing.
    """

    rows: np.ndarray
    seed: int
    balanced_view: Dataset | None = None
    redraws: int = 0

    def materialize(self, source: Dataset) -> Dataset:
        return source.subset(self.rows)

    @property
    def unique_fraction(self) -> float:
        if self.rows.size == 0:
            return 0.0
        return np.unique(self.rows).size / self.rows.size


def bootstrap(data: Dataset, seed: int) -> BootstrapSample:
    """Draw ``len(data)`` row indices uniformly with replacement."""
    n = data.n_rows
    if n == 0:
        raise ConfigurationError("cannot bootstrap an empty dataset")
    rng = np.random.default_rng(seed)
    rows = rng.integers(0, n, size=n, dtype=np.int64)
    return BootstrapSample(rows=rows, seed=seed)
