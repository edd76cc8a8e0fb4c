"""Base-learner hyperparameters and a single entry point to train any kind."""

from __future__ import annotations

import math

from pydantic import BaseModel, ConfigDict, Field

from src.classifiers.base import Classifier
from src.classifiers.forest import train_random_forest
from src.classifiers.knn import train_knn
from src.classifiers.naive_bayes import train_bernoulli_nb
from src.classifiers.tree import train_decision_tree
from src.config import MODEL_DEFAULTS
from src.core.errors import ConfigurationError
from src.core.models import BaseKind
from src.dataset.models import Dataset


class LearnerParams(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    max_depth: int | None = Field(default=MODEL_DEFAULTS["max_depth"], ge=1)
    min_samples_split: int = Field(default=MODEL_DEFAULTS["min_samples_split"], ge=2)
    knn_k: int = Field(default=MODEL_DEFAULTS["knn_k"], ge=1)
    nb_alpha: float = Field(default=MODEL_DEFAULTS["nb_alpha"], gt=0)
    forest_size: int = Field(default=MODEL_DEFAULTS["forest_size"], ge=1)


def resolve_feature_subsample(value: int | str | None, n_features: int) -> int | None:
    """Turn an rf_feature_subsample setting into a per-node feature count."""
    if value is None:
        return None
    if value == "sqrt":
        return max(1, int(math.sqrt(n_features)))
    if isinstance(value, int) and value >= 1:
        return min(value, max(n_features, 1))
    raise ConfigurationError(
        f"rf_feature_subsample must be 'sqrt' or a positive int, got {value!r}"
    )


def train_base(
    kind: BaseKind,
    data: Dataset,
    params: LearnerParams | None = None,
    seed: int = 0,
    feature_subsample: int | None = None,
) -> Classifier:
    params = params or LearnerParams()
    if kind == BaseKind.TREE:
        return train_decision_tree(
            data,
            max_depth=params.max_depth,
            min_samples_split=params.min_samples_split,
            feature_subsample=feature_subsample,
            seed=seed,
        )
    if kind == BaseKind.KNN:
        return train_knn(data, k=params.knn_k)
    if kind == BaseKind.NB:
        return train_bernoulli_nb(data, alpha=params.nb_alpha)
    if kind == BaseKind.FOREST:
        return train_random_forest(
            data,
            n_trees=params.forest_size,
            feature_subsample=feature_subsample,
            max_depth=params.max_depth,
            min_samples_split=params.min_samples_split,
            seed=seed,
        )
    raise ConfigurationError(f"unknown base kind: {kind!r}")
