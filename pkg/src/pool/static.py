"""Static combination: majority vote, single best, static selection."""

from __future__ import annotations

import math

import numpy as np

from src.classifiers.base import Classifier, as_feature_matrix
from src.config import MODEL_DEFAULTS
from src.core.errors import ConfigurationError
from src.core.logging import get_logger
from src.core.models import Label, RankingMetric
from src.dataset.models import Dataset
from src.metrics.confusion import evaluate_predictions
from src.pool.pool import ClassifierPool
from src.pool.voting import vote

logger = get_logger("static")


def majority_vote(pool: ClassifierPool, x, weights=None) -> Label:
    """Weighted plurality of member predictions for one row; ties go positive."""
    row = as_feature_matrix(x)
    if row.shape[0] != 1:
        raise ConfigurationError(f"majority_vote takes one row, got {row.shape[0]}")
    return Label(int(vote(pool.predictions(row), weights)[0]))


def member_scores(
    pool: ClassifierPool,
    validation: Dataset,
    metric: RankingMetric = RankingMetric.ACCURACY,
    predictions: np.ndarray | None = None,
) -> np.ndarray:
    """Per-member validation score.

    Accuracy is returned as the integer count of correct rows so that equal
    accuracies compare exactly equal.
    """
    if validation.n_rows == 0:
        raise ConfigurationError("validation set is empty")
    if predictions is None:
        predictions = pool.predictions(validation.features)
    if RankingMetric(metric) == RankingMetric.ACCURACY:
        return (predictions == validation.labels[:, None]).sum(axis=0).astype(np.float64)
    return np.array(
        [evaluate_predictions(predictions[:, i], validation.labels).g_mean for i in range(pool.n)]
    )


def single_best(
    pool: ClassifierPool,
    validation: Dataset,
    metric: RankingMetric = RankingMetric.ACCURACY,
) -> Classifier:
    """Member with the highest validation score; ties go to the lowest index."""
    scores = member_scores(pool, validation, metric)
    best = int(np.argmax(scores))
    logger.debug("single_best_selected", member=best, score=float(scores[best]))
    return pool.members[best]


def static_selection(
    pool: ClassifierPool,
    validation: Dataset,
    keep_fraction: float = MODEL_DEFAULTS["keep_fraction"],
    metric: RankingMetric = RankingMetric.ACCURACY,
) -> ClassifierPool:
    """Keep the ceil(keep_fraction * n) best members, in their original order."""
    if not 0.0 < keep_fraction <= 1.0:
        raise ConfigurationError(f"keep_fraction must be in (0, 1], got {keep_fraction}")
    scores = member_scores(pool, validation, metric)
    keep = max(1, math.ceil(keep_fraction * pool.n - 1e-9))  # 0.7 * 10 must give 7, not 8
    ranked = np.argsort(-scores, kind="stable")[:keep]
    kept = np.sort(ranked)
    logger.debug("static_selection", kept=kept.tolist(), n=pool.n)
    return pool.subset(kept)
