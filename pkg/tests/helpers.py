"""Test doubles and dataset builders shared across test packages."""

import numpy as np
import scipy.sparse as sp

from src.classifiers.base import Classifier, as_feature_matrix
from src.core.models import BaseKind
from src.dataset.models import Dataset
from src.pool.pool import ClassifierPool, MemberProvenance


def make_dataset(features, labels, vocabulary=None) -> Dataset:
    return Dataset(sp.csr_matrix(np.asarray(features, dtype=np.float64)), labels, vocabulary)


class ColumnClassifier(Classifier):
    """Test double: predicts positive when column ``col`` exceeds ``cut``.

    ``invert`` flips the decision, ``confidence`` sets the support of the
    predicted class.
    """

    kind = "column"

    def __init__(self, col=0, cut=0.5, invert=False, confidence=1.0):
        self.col = col
        self.cut = cut
        self.invert = invert
        self.confidence = confidence

    def support(self, x):
        x = as_feature_matrix(x)
        values = np.asarray(x[:, self.col].todense()).ravel()
        positive = values > self.cut
        if self.invert:
            positive = ~positive
        pos = np.where(positive, self.confidence, 1.0 - self.confidence)
        return np.column_stack([1.0 - pos, pos])


class ConstantClassifier(Classifier):
    kind = "constant"

    def __init__(self, label):
        self.label = int(label)

    def support(self, x):
        n = as_feature_matrix(x).shape[0]
        pos = np.full(n, float(self.label))
        return np.column_stack([1.0 - pos, pos])


def make_pool(members, base_kind=BaseKind.TREE) -> ClassifierPool:
    """Hand-built pool around test doubles; provenance seeds are member indices."""
    provenance = [
        MemberProvenance(bootstrap_seed=i, balancing_applied=False) for i in range(len(members))
    ]
    return ClassifierPool(members=list(members), provenance=provenance, base_kind=base_kind)


def prefix_classifier(correct: int) -> ColumnClassifier:
    """On rows x = 0, 1, 2, ... predicts positive exactly for the first ``correct`` rows."""
    return ColumnClassifier(col=0, cut=correct - 0.5, invert=True)


class FittedEstimator(Classifier):
    """Adapter around a fitted scikit-learn classifier trained on labels 0/1."""

    kind = "sklearn"

    def __init__(self, estimator):
        self.estimator = estimator

    def support(self, x):
        return self.estimator.predict_proba(as_feature_matrix(x).toarray())
