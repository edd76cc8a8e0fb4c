"""Class-count summary and imbalance ratio."""

from __future__ import annotations

from src.core.errors import ConfigurationError
from src.dataset.models import Dataset, DatasetSummary


def imbalance_ratio(negatives: int, positives: int) -> float:
    """Majority count over minority count; infinite when a class is absent."""
    majority, minority = max(negatives, positives), min(negatives, positives)
    if minority == 0:
        return float("inf")
    return majority / minority


def summarize_counts(total: int, positives: int, n_features: int = 0) -> DatasetSummary:
    """Summary from metadata counts alone (e.g. a published corpus description)."""
    negatives = total - positives
    return DatasetSummary(
        total=total,
        positives=positives,
        negatives=negatives,
        imbalance_ratio=imbalance_ratio(negatives, positives),
        n_features=n_features,
    )


def summarize(data: Dataset) -> DatasetSummary:
    if data.n_rows == 0:
        raise ConfigurationError("cannot summarize an empty dataset")
    return summarize_counts(data.n_rows, data.positives, data.n_features)
