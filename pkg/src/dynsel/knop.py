"""K-Nearest Output Profiles.

The region is found in output-profile space: a query's profile is the
concatenated class supports of every member, compared against the profiles
of DSEL rows. Each member votes with weight equal to the number of profile
neighbors it classified correctly.
"""

from __future__ import annotations

import numpy as np

from src.config import MODEL_DEFAULTS
from src.core.errors import ConfigurationError
from src.core.models import Label
from src.core.neighbors import k_nearest
from src.dynsel.base import DynamicSelector
from src.dynsel.dsel import Dsel, member_labels, output_profiles
from src.pool.pool import ClassifierPool
from src.pool.voting import weighted_vote_rows


class KnopSelector(DynamicSelector):
    name = "knop"

    def __init__(
        self, pool: ClassifierPool, dsel: Dsel, k: int = MODEL_DEFAULTS["region_k"]
    ) -> None:
        super().__init__(pool, dsel)
        if not 1 <= k <= dsel.size:
            raise ConfigurationError(f"profile region size k={k} must be in [1, {dsel.size}]")
        self.k = k
        self._reference = dsel.profile_matrix

    def weights(self, supports: np.ndarray) -> np.ndarray:
        """(rows, n) vote weights from query supports of shape (rows, n, 2)."""
        indices, _ = k_nearest(output_profiles(supports), self._reference, self.k)
        weights = self.dsel.correct[indices].sum(axis=1).astype(np.float64)
        # nobody right on any profile neighbor: fall back to the full pool
        weights[weights.sum(axis=1) == 0] = 1.0
        return weights

    def predict_batch(self, x) -> np.ndarray:
        supports = self.pool.supports(x)
        return weighted_vote_rows(member_labels(supports), self.weights(supports))


def knop_select(
    pool: ClassifierPool, dsel: Dsel, xq, k: int = MODEL_DEFAULTS["region_k"]
) -> Label:
    return KnopSelector(pool, dsel, k).predict_one(xq)
