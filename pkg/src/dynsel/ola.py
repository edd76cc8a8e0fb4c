"""Overall Local Accuracy: the single most accurate member in the region."""

from __future__ import annotations

import numpy as np

from src.config import MODEL_DEFAULTS
from src.core.models import Label
from src.dynsel.base import DynamicSelector
from src.dynsel.dsel import Dsel, regions_of_competence
from src.pool.pool import ClassifierPool


class OlaSelector(DynamicSelector):
    name = "ola"

    def __init__(
        self, pool: ClassifierPool, dsel: Dsel, k: int = MODEL_DEFAULTS["region_k"]
    ) -> None:
        super().__init__(pool, dsel)
        self.k = k

    def competence(self, x) -> np.ndarray:
        """(rows, n) count of region rows each member classifies correctly."""
        indices, _ = regions_of_competence(self.dsel, x, self.k)
        return self.dsel.correct[indices].sum(axis=1)

    def predict_batch(self, x) -> np.ndarray:
        best = np.argmax(self.competence(x), axis=1)  # first maximum = lowest index
        predictions = self.pool.predictions(x)
        return predictions[np.arange(predictions.shape[0]), best].astype(np.int8)


def ola_select(
    pool: ClassifierPool, dsel: Dsel, xq, k: int = MODEL_DEFAULTS["region_k"]
) -> Label:
    return OlaSelector(pool, dsel, k).predict_one(xq)
