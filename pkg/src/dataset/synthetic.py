"""Synthetic imbalanced datasets for demos and tests.

Two isotropic Gaussian blobs (unit variance). The negative blob is centered
at the origin; the positive blob sits ``separation`` away along the main
diagonal, so smaller separations mean more class overlap.
"""

from __future__ import annotations

import numpy as np
import scipy.sparse as sp

from src.core.errors import ConfigurationError
from src.core.logging import get_logger
from src.core.models import Label
from src.dataset.models import Dataset

logger = get_logger("synthetic")


def make_blobs_dataset(
    n: int = 2000,
    imbalance_ratio: float = 20.0,
    n_features: int = 2,
    separation: float = 2.0,
    seed: int = 0,
) -> Dataset:
    """Generate ``n`` rows with majority/minority ≈ ``imbalance_ratio``."""
    if n < 2:
        raise ConfigurationError(f"need at least 2 rows, got {n}")
    if imbalance_ratio < 1.0:
        raise ConfigurationError(f"imbalance_ratio must be >= 1, got {imbalance_ratio}")
    if n_features < 1:
        raise ConfigurationError(f"n_features must be >= 1, got {n_features}")

    n_pos = max(1, int(round(n / (imbalance_ratio + 1.0))))
    n_neg = n - n_pos
    rng = np.random.default_rng(seed)

    offset = np.full(n_features, separation / np.sqrt(n_features))
    neg = rng.normal(0.0, 1.0, size=(n_neg, n_features))
    pos = rng.normal(0.0, 1.0, size=(n_pos, n_features)) + offset

    features = np.vstack([neg, pos])
    labels = np.concatenate([
        np.full(n_neg, Label.NEGATIVE, dtype=np.int8),
        np.full(n_pos, Label.POSITIVE, dtype=np.int8),
    ])
    order = rng.permutation(n)

    logger.debug(
        "blobs_generated", n=n, positives=n_pos, n_features=n_features, seed=seed
    )
    return Dataset(
        sp.csr_matrix(features[order]),
        labels[order],
        tuple(f"x{j}" for j in range(n_features)),
    )
