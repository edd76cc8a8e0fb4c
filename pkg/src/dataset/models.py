"""Dataset containers: sparse feature matrix + binary labels."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp

from src.core.errors import ConfigurationError
from src.core.models import Label


@dataclass(frozen=True)
class Dataset:
    """Row-major sparse features with one binary label per row.

    Treated as immutable: operations return new datasets and never modify
    the matrix or label array of an existing one.
    """

    features: sp.csr_matrix
    labels: np.ndarray
    vocabulary: tuple[str, ...] | None = None

    def __post_init__(self) -> None:
        features = self.features
        if not sp.isspmatrix_csr(features):
            features = sp.csr_matrix(features, dtype=np.float64)
        elif features.dtype != np.float64:
            features = features.astype(np.float64)
        labels = np.asarray(self.labels, dtype=np.int8).ravel()

        if features.shape[0] != labels.shape[0]:
            raise ConfigurationError(
                f"feature rows ({features.shape[0]}) != labels ({labels.shape[0]})"
            )
        if labels.size and not np.isin(labels, (Label.NEGATIVE, Label.POSITIVE)).all():
            raise ConfigurationError("labels must be binary (0 = negative, 1 = positive)")
        if features.nnz and not np.isfinite(features.data).all():
            raise ConfigurationError("features contain non-finite values")
        if self.vocabulary is not None:
            if len(self.vocabulary) != features.shape[1]:
                raise ConfigurationError(
                    f"vocabulary size {len(self.vocabulary)} != columns {features.shape[1]}"
                )
            if len(set(self.vocabulary)) != len(self.vocabulary):
                raise ConfigurationError("vocabulary contains duplicate feature names")

        labels.setflags(write=False)
        object.__setattr__(self, "features", features)
        object.__setattr__(self, "labels", labels)
        if self.vocabulary is not None:
            object.__setattr__(self, "vocabulary", tuple(self.vocabulary))

    @property
    def n_rows(self) -> int:
        return self.features.shape[0]

    @property
    def n_features(self) -> int:
        return self.features.shape[1]

    @property
    def positives(self) -> int:
        return int(np.count_nonzero(self.labels == Label.POSITIVE))

    @property
    def negatives(self) -> int:
        return int(np.count_nonzero(self.labels == Label.NEGATIVE))

    def class_counts(self) -> dict[Label, int]:
        return {Label.NEGATIVE: self.negatives, Label.POSITIVE: self.positives}

    def minority_label(self) -> Label:
        """Smaller class; the positive class when counts are equal."""
        return Label.NEGATIVE if self.negatives < self.positives else Label.POSITIVE

    def subset(self, rows: np.ndarray) -> Dataset:
        """Rows selected (possibly repeated) by index, in the given order."""
        rows = np.asarray(rows, dtype=np.int64)
        return Dataset(self.features[rows], self.labels[rows], self.vocabulary)

    def is_binary(self) -> bool:
        data = self.features.data
        return bool(np.isin(data, (0.0, 1.0)).all())

    def __len__(self) -> int:
        return self.n_rows


@dataclass(frozen=True)
class SplitPair:
    """Train (Γ) and test (τ) partitions of one source dataset."""

    train: Dataset
    test: Dataset
    seed: int
    train_index: np.ndarray = field(default_factory=lambda: np.empty(0, dtype=np.int64))
    test_index: np.ndarray = field(default_factory=lambda: np.empty(0, dtype=np.int64))


@dataclass(frozen=True)
class DatasetSummary:
    """Class counts and imbalance ratio of a dataset."""

    total: int
    positives: int
    negatives: int
    imbalance_ratio: float
    n_features: int

    @property
    def display_ir(self) -> str:
        if math.isinf(self.imbalance_ratio):
            return "inf"
        return f"{self.imbalance_ratio:.2f}"

    def summary(self) -> str:
        lines = [
            f"Instances:       {self.total}",
            f"Positives:       {self.positives}",
            f"Negatives:       {self.negatives}",
            f"Features:        {self.n_features}",
            f"Imbalance ratio: {self.display_ir}",
        ]
        return "\n".join(lines)
