"""K-Disagreeing-Neighbors instance hardness.

kdn(x) = |{y in kNN(x) : label(y) != label(x)}| / k, where kNN(x) are the
k nearest other rows (Euclidean, ties by lower row index).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import pandas as pd

from src.config import MODEL_DEFAULTS
from src.core.errors import ConfigurationError
from src.core.logging import get_logger
from src.core.models import CLASS_ORDER, Label
from src.core.neighbors import k_nearest
from src.dataset.models import Dataset

logger = get_logger("hardness")


@dataclass(frozen=True)
class KdnReport:
    k: int
    scores: np.ndarray  # per row, on the grid {0, 1/k, ..., 1}
    labels: np.ndarray

    def class_mean(self, label: Label) -> float:
        mask = self.labels == label
        return float(self.scores[mask].mean()) if mask.any() else 0.0

    @property
    def class_means(self) -> dict[Label, float]:
        return {c: self.class_mean(c) for c in CLASS_ORDER}

    def cdf(self, label: Label | None = None) -> list[tuple[float, float]]:
        """Step-function CDF: (score, fraction of rows with kdn <= score) per distinct score."""
        values = self.scores if label is None else self.scores[self.labels == label]
        if values.size == 0:
            return []
        distinct, counts = np.unique(values, return_counts=True)
        fractions = np.cumsum(counts) / values.size
        fractions[-1] = 1.0
        return [(float(s), float(f)) for s, f in zip(distinct, fractions, strict=True)]

    def scores_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            {
                "instance_id": np.arange(self.scores.size),
                "class": self.labels.astype(int),
                "kdn": self.scores,
            }
        )

    def cdf_frame(self) -> pd.DataFrame:
        rows = [
            {"class": int(c), "score": s, "cumulative_fraction": f}
            for c in CLASS_ORDER
            for s, f in self.cdf(c)
        ]
        return pd.DataFrame(rows, columns=["class", "score", "cumulative_fraction"])


@dataclass(frozen=True)
class HardnessShift:
    before: KdnReport
    after: KdnReport

    @property
    def deltas(self) -> dict[Label, float]:
        """after - before, per class mean."""
        return {c: self.after.class_mean(c) - self.before.class_mean(c) for c in CLASS_ORDER}

    def summary(self) -> str:
        lines = []
        for c in CLASS_ORDER:
            lines.append(
                f"{c.name.lower():8s} {self.before.class_mean(c):.4f} -> "
                f"{self.after.class_mean(c):.4f} ({self.deltas[c]:+.4f})"
            )
        return "\n".join(lines)


def kdn_scores(data: Dataset, k: int = MODEL_DEFAULTS["kdn_k"]) -> KdnReport:
    if k < 1:
        raise ConfigurationError(f"k must be >= 1, got {k}")
    if data.n_rows <= k:
        raise ConfigurationError(f"KDN needs more than k={k} rows, got {data.n_rows}")
    indices, _ = k_nearest(data.features, data.features, k, exclude_self=True)
    disagree = np.count_nonzero(data.labels[indices] != data.labels[:, None], axis=1)
    report = KdnReport(k=k, scores=disagree / k, labels=data.labels.copy())
    logger.debug(
        "kdn_scored",
        rows=data.n_rows,
        k=k,
        negative_mean=report.class_mean(Label.NEGATIVE),
        positive_mean=report.class_mean(Label.POSITIVE),
    )
    return report


def hardness_shift(
    before: Dataset, after: Dataset, k: int = MODEL_DEFAULTS["kdn_k"]
) -> HardnessShift:
    """KDN before and after balancing; synthetic rows in ``after`` count as ordinary rows."""
    shift = HardnessShift(before=kdn_scores(before, k), after=kdn_scores(after, k))
    logger.info(
        "hardness_shift",
        k=k,
        **{f"{c.name.lower()}_delta": round(d, 6) for c, d in shift.deltas.items()},
    )
    return shift
