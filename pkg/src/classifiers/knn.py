"""k-nearest-neighbor classifier (lazy, Euclidean)."""

from __future__ import annotations

import numpy as np

from src.classifiers.base import Classifier, as_feature_matrix
from src.config import MODEL_DEFAULTS
from src.core.errors import ConfigurationError
from src.core.logging import get_logger
from src.core.models import Label
from src.core.neighbors import k_nearest
from src.dataset.models import Dataset

logger = get_logger("knn")


class KNearestNeighbors(Classifier):
    """Support is the class fraction among the k nearest training rows.

    Distance ties go to the lower training-row index; a 50/50 vote goes to
    the positive class (see ``labels_from_support``).
    """

    kind = "knn"

    def __init__(self, features, labels: np.ndarray, k: int) -> None:
        self._features = features
        self._labels = labels
        self.k = k

    def support(self, x) -> np.ndarray:
        x = as_feature_matrix(x)
        if x.shape[0] == 0:
            return np.empty((0, 2))
        idx, _ = k_nearest(x, self._features, self.k)
        pos = (self._labels[idx] == Label.POSITIVE).mean(axis=1)
        return np.column_stack([1.0 - pos, pos])

    def describe(self) -> dict:
        return {"learner": self.kind, "k": self.k, "train_rows": int(self._labels.size)}


def train_knn(data: Dataset, k: int = MODEL_DEFAULTS["knn_k"]) -> KNearestNeighbors:
    if data.n_rows == 0:
        raise ConfigurationError("cannot train kNN on an empty dataset")
    if k < 1:
        raise ConfigurationError(f"k must be >= 1, got {k}")
    if k > data.n_rows:
        logger.warning("knn_k_clamped", requested=k, used=data.n_rows)
        k = data.n_rows
    return KNearestNeighbors(data.features, data.labels, k)
