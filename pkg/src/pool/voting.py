"""Weighted plurality vote over member predictions."""

from __future__ import annotations

import numpy as np

from src.core.errors import ConfigurationError
from src.core.models import Label


def vote(predictions: np.ndarray, weights: np.ndarray | None = None) -> np.ndarray:
    """Combine a (n_rows, n_members) label matrix row-wise.

    Ties, including an all-zero weight vector, go to the positive class.
    """
    predictions = np.atleast_2d(np.asarray(predictions))
    n_members = predictions.shape[1]
    if weights is None:
        weights = np.ones(n_members, dtype=np.float64)
    else:
        weights = np.asarray(weights, dtype=np.float64)
        if weights.shape != (n_members,):
            raise ConfigurationError(f"expected {n_members} weights, got {weights.shape}")
        if (weights < 0).any():
            raise ConfigurationError("vote weights must be non-negative")

    positive = (predictions == Label.POSITIVE).astype(np.float64) @ weights
    negative = (predictions == Label.NEGATIVE).astype(np.float64) @ weights
    return np.where(positive >= negative, Label.POSITIVE, Label.NEGATIVE).astype(np.int8)


def weighted_vote_rows(predictions: np.ndarray, weights: np.ndarray) -> np.ndarray:
    """Row-wise vote with a separate weight vector per row (n_rows, n_members)."""
    predictions = np.asarray(predictions)
    weights = np.asarray(weights, dtype=np.float64)
    positive = ((predictions == Label.POSITIVE) * weights).sum(axis=1)
    negative = ((predictions == Label.NEGATIVE) * weights).sum(axis=1)
    return np.where(positive >= negative, Label.POSITIVE, Label.NEGATIVE).astype(np.int8)
