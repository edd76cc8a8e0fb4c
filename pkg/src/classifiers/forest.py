"""Random forest: CART trees on bootstraps, each split over a random feature subset."""

from __future__ import annotations

import math

import numpy as np

from src.classifiers.base import Classifier, as_feature_matrix
from src.classifiers.tree import DecisionTree, train_decision_tree
from src.config import MODEL_DEFAULTS
from src.core.errors import ConfigurationError
from src.dataset.models import Dataset


class RandomForest(Classifier):
    """Support is the mean of the trees' supports."""

    kind = "forest"

    def __init__(self, trees: list[DecisionTree], feature_subsample: int) -> None:
        self.trees = trees
        self.feature_subsample = feature_subsample

    @property
    def n_trees(self) -> int:
        return len(self.trees)

    def support(self, x) -> np.ndarray:
        x = as_feature_matrix(x)
        if x.shape[0] == 0:
            return np.empty((0, 2))
        return np.mean([tree.support(x) for tree in self.trees], axis=0)

    def describe(self) -> dict:
        return {
            "learner": self.kind,
            "trees": self.n_trees,
            "feature_subsample": self.feature_subsample,
        }


def train_random_forest(
    data: Dataset,
    n_trees: int = MODEL_DEFAULTS["forest_size"],
    feature_subsample: int | None = None,
    max_depth: int | None = MODEL_DEFAULTS["max_depth"],
    min_samples_split: int = MODEL_DEFAULTS["min_samples_split"],
    seed: int = 0,
) -> RandomForest:
    """``feature_subsample`` defaults to sqrt(n_features).

    Tree bootstraps and tree seeds come from one generator seeded with ``seed``,
    so forests trained with consecutive seeds share no bootstrap.
    """
    if data.n_rows == 0:
        raise ConfigurationError("cannot train a random forest on an empty dataset")
    if n_trees < 1:
        raise ConfigurationError(f"n_trees must be >= 1, got {n_trees}")
    if feature_subsample is None:
        feature_subsample = max(1, int(math.sqrt(data.n_features)))

    rng = np.random.default_rng(seed)
    trees = []
    for _ in range(n_trees):
        rows = rng.integers(0, data.n_rows, size=data.n_rows)
        trees.append(
            train_decision_tree(
                data.subset(rows),
                max_depth=max_depth,
                min_samples_split=min_samples_split,
                feature_subsample=feature_subsample,
                seed=int(rng.integers(0, 2**31 - 1)),
            )
        )
    return RandomForest(trees, feature_subsample)
