"""Dynamic-selection dataset (DSEL) and regions of competence.

DSEL is a stratified hold-out carved from the training set before the pool
is built, so competence is never estimated on rows a member was trained on.
Every member's predictions and supports over DSEL are computed once.
"""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass

import numpy as np

from src.classifiers.base import as_feature_matrix, labels_from_support
from src.config import MODEL_DEFAULTS
from src.core.errors import ConfigurationError
from src.core.logging import get_logger
from src.core.models import CLASS_ORDER, DselPolicy
from src.core.neighbors import k_nearest
from src.dataset.models import Dataset
from src.dataset.split import stratified_split
from src.pool.pool import ClassifierPool

logger = get_logger("dsel")


def member_labels(supports: np.ndarray) -> np.ndarray:
    """(rows, n) member labels from (rows, n, 2) supports."""
    rows, n, _ = supports.shape
    return labels_from_support(supports.reshape(rows * n, 2)).reshape(rows, n)


def output_profiles(supports: np.ndarray) -> np.ndarray:
    """Flatten (rows, n, 2) member supports into (rows, 2n) output profiles."""
    return supports.reshape(supports.shape[0], -1)


@dataclass(frozen=True)
class Dsel:
    """Held-out labeled rows plus the pool's precomputed outputs on them."""

    data: Dataset
    pool: ClassifierPool
    predictions: np.ndarray  # (m, n) labels
    supports: np.ndarray     # (m, n, 2)

    @classmethod
    def precompute(cls, data: Dataset, pool: ClassifierPool) -> Dsel:
        supports = pool.supports(data.features)
        predictions = member_labels(supports)
        return cls(data=data, pool=pool, predictions=predictions, supports=supports)

    @property
    def size(self) -> int:
        return self.data.n_rows

    @property
    def correct(self) -> np.ndarray:
        """(m, n) booleans: member i classifies DSEL row j correctly."""
        return self.predictions == self.data.labels[:, None]

    @property
    def profile_matrix(self) -> np.ndarray:
        return output_profiles(self.supports)

    @property
    def true_class_support(self) -> np.ndarray:
        """(m, n) support each member gives to the row's true class."""
        m, n = self.predictions.shape
        rows = np.arange(m)[:, None]
        return self.supports[rows, np.arange(n)[None, :], self.data.labels[:, None]]


@dataclass(frozen=True)
class RegionOfCompetence:
    """k nearest DSEL rows of a query, nearest first (ties by lower index)."""

    indices: np.ndarray
    distances: np.ndarray


def carve_dsel(
    train: Dataset,
    dsel_fraction: float = MODEL_DEFAULTS["dsel_fraction"],
    seed: int = 0,
    min_rows: int = MODEL_DEFAULTS["region_k"],
    policy: DselPolicy = DselPolicy.HOLDOUT,
) -> tuple[Dataset, Dataset]:
    """Return (pool_train, dsel_rows)."""
    if DselPolicy(policy) == DselPolicy.REUSE:
        if train.n_rows < min_rows:
            raise ConfigurationError(f"training set has {train.n_rows} rows, need >= {min_rows}")
        return train, train

    counts = train.class_counts()
    if any(counts[c] < 2 for c in CLASS_ORDER):
        raise ConfigurationError(
            "DSEL hold-out needs >= 2 instances of each class in the training set"
        )
    split = stratified_split(train, dsel_fraction, seed)
    if split.test.n_rows < min_rows:
        raise ConfigurationError(
            f"dsel_fraction={dsel_fraction} leaves {split.test.n_rows} DSEL rows, "
            f"need >= {min_rows}"
        )
    return split.train, split.test


def build_dsel(
    train: Dataset,
    pool: Callable[[Dataset], ClassifierPool],
    dsel_fraction: float = MODEL_DEFAULTS["dsel_fraction"],
    seed: int = 0,
    min_rows: int = MODEL_DEFAULTS["region_k"],
    policy: DselPolicy = DselPolicy.HOLDOUT,
) -> tuple[Dataset, Dsel]:
    """Carve DSEL out of ``train``, build the pool on the rest, precompute outputs.

    ``pool`` is the pool builder; it only ever sees the pool-training rows.
    """
    pool_train, dsel_rows = carve_dsel(train, dsel_fraction, seed, min_rows, policy)
    built = pool(pool_train)
    dsel = Dsel.precompute(dsel_rows, built)
    logger.info(
        "dsel_built",
        pool_train=pool_train.n_rows,
        dsel=dsel.size,
        policy=DselPolicy(policy).value,
        members=built.n,
    )
    return pool_train, dsel


def regions_of_competence(dsel: Dsel, x, k: int = MODEL_DEFAULTS["region_k"]):
    """Batched regions: (indices, distances), each (rows, k)."""
    if not 1 <= k <= dsel.size:
        raise ConfigurationError(f"region size k={k} must be in [1, {dsel.size}]")
    return k_nearest(as_feature_matrix(x), dsel.data.features, k)


def region_of_competence(
    dsel: Dsel, xq, k: int = MODEL_DEFAULTS["region_k"]
) -> RegionOfCompetence:
    indices, distances = regions_of_competence(dsel, xq, k)
    return RegionOfCompetence(indices=indices[0], distances=distances[0])
