"""META-DES: a meta-classifier that predicts whether a member is competent.

For a (row, member) pair the meta-feature vector concatenates:

  f1  K bits, member correct on each region neighbor
  f2  K supports the member gives each neighbor's true class
  f3  local accuracy (mean of f1)
  f4  Kp bits, member correct on each output-profile neighbor
  f5  the member's support for its own predicted class at the row

Training rows are DSEL rows on which the pool disagrees: the fraction of
members voting for the plurality label is below the consensus threshold.
The meta-label is whether the member classified the row correctly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from src.classifiers.base import as_feature_matrix
from src.classifiers.naive_bayes import BernoulliNaiveBayes, train_bernoulli_nb
from src.config import MODEL_DEFAULTS
from src.core.errors import ConfigurationError
from src.core.logging import get_logger
from src.core.models import Label
from src.core.neighbors import k_nearest
from src.dataset.models import Dataset
from src.dynsel.base import DynamicSelector
from src.dynsel.dsel import Dsel, member_labels, output_profiles
from src.pool.pool import ClassifierPool
from src.pool.voting import weighted_vote_rows

logger = get_logger("metades")

RELAX_STEP = 0.1
MIN_META_PER_CLASS = 2


@dataclass(frozen=True)
class MetaFeatureVector:
    f1: np.ndarray
    f2: np.ndarray
    f3: float
    f4: np.ndarray
    f5: float

    def as_array(self) -> np.ndarray:
        return np.concatenate([self.f1, self.f2, [self.f3], self.f4, [self.f5]]).astype(np.float64)

    def __len__(self) -> int:
        return self.f1.size + self.f2.size + 1 + self.f4.size + 1


@dataclass(frozen=True)
class MetaClassifier:
    model: BernoulliNaiveBayes
    k: int
    kp: int
    consensus_threshold: float
    n_meta_rows: int
    seed: int = 0

    @property
    def n_meta_features(self) -> int:
        return 2 * self.k + self.kp + 2


def meta_features(
    dsel: Dsel,
    supports: np.ndarray,
    region: np.ndarray,
    profile_region: np.ndarray,
) -> np.ndarray:
    """Meta-feature tensor of shape (rows, n, 2K + Kp + 2).

    ``supports`` are the pool's supports at the rows (rows, n, 2); ``region``
    and ``profile_region`` hold DSEL neighbor indices, (rows, K) and (rows, Kp).
    """
    correct = dsel.correct.astype(np.float64)
    f1 = correct[region].transpose(0, 2, 1)
    f2 = dsel.true_class_support[region].transpose(0, 2, 1)
    f3 = f1.mean(axis=2, keepdims=True)
    f4 = correct[profile_region].transpose(0, 2, 1)
    f5 = supports.max(axis=2, keepdims=True)
    return np.concatenate([f1, f2, f3, f4, f5], axis=2)


def meta_feature_vector(features: np.ndarray, k: int, kp: int) -> MetaFeatureVector:
    """Split one flat meta-feature row back into its named groups."""
    return MetaFeatureVector(
        f1=features[:k],
        f2=features[k : 2 * k],
        f3=float(features[2 * k]),
        f4=features[2 * k + 1 : 2 * k + 1 + kp],
        f5=float(features[-1]),
    )


def consensus(predictions: np.ndarray) -> np.ndarray:
    """Fraction of members agreeing with the plurality label, per row."""
    positive = (predictions == Label.POSITIVE).mean(axis=1)
    return np.maximum(positive, 1.0 - positive)


def _has_both_meta_classes(correct: np.ndarray, rows: np.ndarray) -> bool:
    chosen = correct[rows]
    return (
        np.count_nonzero(chosen) >= MIN_META_PER_CLASS
        and np.count_nonzero(~chosen) >= MIN_META_PER_CLASS
    )


def _select_training_rows(dsel: Dsel, threshold: float) -> tuple[np.ndarray, float]:
    """Rows below the consensus threshold, widened until both meta-labels appear.

    The threshold rises by RELAX_STEP each round; past 1.0 every row is used.
    """
    agreement = consensus(dsel.predictions)
    correct = dsel.correct
    current = threshold
    while True:
        rows = np.flatnonzero(agreement < current) if current <= 1.0 else np.arange(dsel.size)
        if _has_both_meta_classes(correct, rows):
            break
        if current > 1.0:
            raise ConfigurationError(
                "META-DES training has fewer than "
                f"{MIN_META_PER_CLASS} competent or incompetent examples on DSEL"
            )
        current = round(current + RELAX_STEP, 10)
    if current != threshold:
        logger.warning("metades_threshold_relaxed", requested=threshold, used=min(current, 1.0))
    return rows, current


def metades_train(
    pool: ClassifierPool,
    dsel: Dsel,
    k: int = MODEL_DEFAULTS["region_k"],
    kp: int = MODEL_DEFAULTS["metades_kp"],
    consensus_threshold: float = MODEL_DEFAULTS["consensus_threshold"],
    seed: int = 0,
) -> MetaClassifier:
    """Fit the naive Bayes meta-classifier on DSEL.

    Neighborhoods of a training row exclude the row itself. Training is
    deterministic; ``seed`` is kept with the result for provenance.
    """
    if pool.n != dsel.predictions.shape[1]:
        raise ConfigurationError("DSEL was precomputed for a different pool")
    if not 1 <= k <= dsel.size - 1 or not 1 <= kp <= dsel.size - 1:
        raise ConfigurationError(
            f"K={k} and Kp={kp} must be in [1, {dsel.size - 1}] for a DSEL of {dsel.size} rows"
        )
    if not 0.0 < consensus_threshold <= 1.0:
        raise ConfigurationError(
            f"consensus_threshold must be in (0, 1], got {consensus_threshold}"
        )

    rows, used = _select_training_rows(dsel, consensus_threshold)
    region, _ = k_nearest(dsel.data.features, dsel.data.features, k, exclude_self=True)
    profiles = dsel.profile_matrix
    profile_region, _ = k_nearest(profiles, profiles, kp, exclude_self=True)

    tensor = meta_features(dsel, dsel.supports[rows], region[rows], profile_region[rows])
    x = tensor.reshape(-1, tensor.shape[2])
    y = dsel.correct[rows].reshape(-1).astype(np.int8)
    model = train_bernoulli_nb(Dataset(features=x, labels=y))

    logger.info(
        "metades_trained",
        rows=int(rows.size),
        meta_examples=int(y.size),
        competent=int(y.sum()),
        consensus_threshold=min(used, 1.0),
    )
    return MetaClassifier(
        model=model,
        k=k,
        kp=kp,
        consensus_threshold=min(used, 1.0),
        n_meta_rows=int(rows.size),
        seed=seed,
    )


class MetaDesSelector(DynamicSelector):
    name = "metades"

    def __init__(
        self,
        pool: ClassifierPool,
        dsel: Dsel,
        meta: MetaClassifier,
        threshold: float = MODEL_DEFAULTS["selection_threshold"],
    ) -> None:
        super().__init__(pool, dsel)
        if max(meta.k, meta.kp) > dsel.size:
            raise ConfigurationError(f"DSEL of {dsel.size} rows is smaller than K or Kp")
        self.meta = meta
        self.threshold = threshold
        self._profiles = dsel.profile_matrix

    def competence(self, x, supports: np.ndarray | None = None) -> np.ndarray:
        """(rows, n) meta-classifier probability that each member is competent."""
        x = as_feature_matrix(x)
        if supports is None:
            supports = self.pool.supports(x)
        region, _ = k_nearest(x, self.dsel.data.features, self.meta.k)
        profile_region, _ = k_nearest(output_profiles(supports), self._profiles, self.meta.kp)
        tensor = meta_features(self.dsel, supports, region, profile_region)
        rows, n, width = tensor.shape
        proba = self.meta.model.support(tensor.reshape(rows * n, width))[:, Label.POSITIVE]
        return proba.reshape(rows, n)

    def selected(self, x, supports: np.ndarray | None = None) -> np.ndarray:
        """(rows, n) mask of selected members; an empty row selects everyone."""
        mask = self.competence(x, supports) >= self.threshold
        mask[~mask.any(axis=1)] = True
        return mask

    def predict_batch(self, x) -> np.ndarray:
        supports = self.pool.supports(x)
        mask = self.selected(x, supports)
        return weighted_vote_rows(member_labels(supports), mask.astype(np.float64))


def metades_select(
    meta: MetaClassifier,
    pool: ClassifierPool,
    dsel: Dsel,
    xq,
    threshold: float = MODEL_DEFAULTS["selection_threshold"],
) -> Label:
    return MetaDesSelector(pool, dsel, meta, threshold).predict_one(xq)
