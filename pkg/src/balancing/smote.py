"""SMOTE oversampling up to equal class counts.

Synthetic rows are x + g * (x_nn - x) with g ~ U[0, 1), x a minority row and
x_nn one of its k nearest minority neighbors. Originals are kept untouched
and in order; synthetic rows are appended after them. Interpolated binary
features stay fractional.
"""

from __future__ import annotations

from typing import Literal

import numpy as np
import pandas as pd
import scipy.sparse as sp
from imblearn.over_sampling import SMOTE
from pydantic import BaseModel, ConfigDict, Field

from src.config import MODEL_DEFAULTS
from src.core.errors import ConfigurationError
from src.core.logging import get_logger
from src.dataset.models import Dataset

logger = get_logger("smote")


class SmoteConfig(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    k_neighbors: int = Field(default=MODEL_DEFAULTS["k_neighbors"], ge=1)
    target: Literal["equalize"] = "equalize"
    # drop repeated minority vectors before picking interpolation neighbors
    dedup_before_smote: bool = MODEL_DEFAULTS["dedup_before_smote"]
    seed: int = 0

    def derive(self, offset: int) -> SmoteConfig:
        """Same settings with an independent RNG stream."""
        return self.model_copy(update={"seed": self.seed + offset})


def distinct_rows(features: sp.csr_matrix, rows: np.ndarray) -> np.ndarray:
    """First occurrence of every distinct feature vector among ``rows``."""
    block = sp.csr_matrix(features[rows])
    block.eliminate_zeros()
    block.sort_indices()
    bounds = zip(block.indptr[:-1], block.indptr[1:], strict=True)
    keys = pd.Series(
        [(block.indices[lo:hi].tobytes(), block.data[lo:hi].tobytes()) for lo, hi in bounds]
    )
    return rows[~keys.duplicated(keep="first").to_numpy()]


def smote(data: Dataset, config: SmoteConfig | None = None) -> Dataset:
    """Oversample the minority class until both classes have equal counts.

    Interpolation sources are the minority rows, deduplicated by content when
    ``config.dedup_before_smote`` is set. The number of synthetic rows is
    always the full class-count deficit of ``data``.
    """
    config = config or SmoteConfig()
    minority = data.minority_label()
    counts = data.class_counts()
    n_min = counts[minority]
    n_maj = counts[1 - minority]

    if n_min == 0:
        raise ConfigurationError("SMOTE needs at least one minority instance")
    if n_min == n_maj:
        return data

    deficit = n_maj - n_min
    is_minority = data.labels == minority
    sources = np.flatnonzero(is_minority)
    if config.dedup_before_smote:
        sources = distinct_rows(data.features, sources)
    n_src = sources.size

    if n_src == 1:
        # No neighbor to interpolate with: fall back to duplicating the row.
        rows = np.concatenate([np.arange(data.n_rows), np.full(deficit, sources[0])])
        logger.warning("smote_single_minority_duplicated", added=int(deficit), minority=n_min)
        return data.subset(rows)

    k = config.k_neighbors
    if n_src <= k:
        k = n_src - 1
        logger.warning("smote_k_clamped", requested=config.k_neighbors, used=k, sources=n_src)

    fit_rows = np.sort(np.concatenate([np.flatnonzero(~is_minority), sources]))
    sampler = SMOTE(
        sampling_strategy={int(minority): n_src + deficit},
        k_neighbors=k,
        random_state=config.seed,
    )
    features, labels = sampler.fit_resample(data.features[fit_rows], data.labels[fit_rows])

    # imblearn returns its input rows first, then the synthetic ones.
    synthetic = sp.csr_matrix(features)[fit_rows.size :]
    return Dataset(
        sp.vstack([data.features, synthetic], format="csr"),
        np.concatenate([data.labels, np.asarray(labels[fit_rows.size :], dtype=data.labels.dtype)]),
        data.vocabulary,
    )
