"""Abstract base class for dynamic selectors."""

from __future__ import annotations

from abc import ABC, abstractmethod

import numpy as np

from src.classifiers.base import as_feature_matrix
from src.core.logging import get_logger
from src.core.models import Label
from src.dynsel.dsel import Dsel
from src.pool.pool import ClassifierPool


class DynamicSelector(ABC):
    """Predicts each query with the members judged competent around it.

    Subclasses implement the batched ``predict_batch``; queries are
    independent, so row-at-a-time and batched calls give the same labels.
    """

    name: str = "dynamic"

    def __init__(self, pool: ClassifierPool, dsel: Dsel) -> None:
        self.pool = pool
        self.dsel = dsel
        self.logger = get_logger(f"dynsel.{self.name}")

    def predict(self, x) -> np.ndarray:
        x = as_feature_matrix(x)
        if x.shape[0] == 0:
            return np.zeros(0, dtype=np.int8)
        return self.predict_batch(x)

    def predict_one(self, xq) -> Label:
        return Label(int(self.predict(xq)[0]))

    @abstractmethod
    def predict_batch(self, x) -> np.ndarray:
        """Labels for a non-empty (rows, d) query matrix."""
        ...
