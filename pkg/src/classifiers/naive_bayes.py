"""Bernoulli naive Bayes over features binarized at 0.5."""

from __future__ import annotations

import numpy as np
from sklearn.naive_bayes import BernoulliNB

from src.classifiers.base import Classifier, as_feature_matrix
from src.config import MODEL_DEFAULTS
from src.core.errors import ConfigurationError
from src.core.models import CLASS_ORDER
from src.dataset.models import Dataset

BINARIZE_AT = 0.5


class BernoulliNaiveBayes(Classifier):
    """Posterior ∝ P(c) · Π P(f|c), P(f=1|c) = (N_fc + α) / (N_c + 2α)."""

    kind = "nb"

    def __init__(self, model: BernoulliNB) -> None:
        self._model = model

    @property
    def alpha(self) -> float:
        return float(self._model.alpha)

    def support(self, x) -> np.ndarray:
        x = as_feature_matrix(x)
        if x.shape[0] == 0:
            return np.empty((0, 2))
        # An absent training class has log prior -inf; its posterior is 0.
        with np.errstate(divide="ignore"):
            return self._model.predict_proba(x)

    def describe(self) -> dict:
        return {"learner": self.kind, "alpha": self.alpha}


def train_bernoulli_nb(
    data: Dataset, alpha: float = MODEL_DEFAULTS["nb_alpha"]
) -> BernoulliNaiveBayes:
    if data.n_rows == 0:
        raise ConfigurationError("cannot train naive Bayes on an empty dataset")
    if alpha <= 0:
        raise ConfigurationError(f"alpha must be > 0, got {alpha}")
    model = BernoulliNB(alpha=alpha, binarize=BINARIZE_AT)
    classes = np.array([int(c) for c in CLASS_ORDER])
    with np.errstate(divide="ignore"):
        model.partial_fit(data.features, data.labels, classes=classes)
    return BernoulliNaiveBayes(model)
