"""Abstract base class for base learners."""

from __future__ import annotations

from abc import ABC, abstractmethod

import numpy as np
import scipy.sparse as sp

from src.core.models import CLASS_ORDER, Label


def as_feature_matrix(x) -> sp.csr_matrix:
    """Coerce a row, a batch of rows or a Dataset-like matrix to float64 CSR."""
    if sp.issparse(x):
        m = sp.csr_matrix(x, dtype=np.float64)
    else:
        arr = np.asarray(x, dtype=np.float64)
        if arr.ndim == 1:
            arr = arr.reshape(1, -1)
        m = sp.csr_matrix(arr)
    return m


def labels_from_support(support: np.ndarray) -> np.ndarray:
    """Row-wise argmax over [negative, positive]; ties go to positive."""
    support = np.asarray(support)
    return np.where(
        support[:, Label.POSITIVE] >= support[:, Label.NEGATIVE], Label.POSITIVE, Label.NEGATIVE
    ).astype(np.int8)


class Classifier(ABC):
    """Fitted binary classifier.

    Subclasses are built by the ``train_*`` functions and never change
    after construction. ``support`` returns per-class scores in [0, 1]
    that sum to one, columns in ``class_order``; ``predict`` is its argmax.
    """

    kind: str = "classifier"
    class_order = CLASS_ORDER

    @abstractmethod
    def support(self, x) -> np.ndarray:
        """Per-class supports, shape (n_rows, 2)."""
        ...

    def predict(self, x) -> np.ndarray:
        return labels_from_support(self.support(x))

    def predict_one(self, x) -> Label:
        return Label(int(self.predict(x)[0]))

    def describe(self) -> dict:
        return {"learner": self.kind}
