"""Bootstrap-Based Balancing (BBB) and the whole-set balancing baseline.

BBB draws n bootstraps of the training set and balances each one on its
own, so every pool member sees a different synthetic neighborhood. The
training set itself is never balanced. The whole-set baseline applies
SMOTE once to the full training set instead.
"""

from __future__ import annotations

import numpy as np
from joblib import Parallel, delayed

from src.balancing.bootstrap import BootstrapSample, bootstrap
from src.balancing.smote import SmoteConfig, smote
from src.config import settings
from src.core.errors import ConfigurationError
from src.core.logging import get_logger
from src.core.models import CLASS_ORDER
from src.dataset.models import Dataset

logger = get_logger("bbb")

MAX_REDRAWS = 100


def _has_both_classes(labels: np.ndarray) -> bool:
    return all(np.any(labels == c) for c in CLASS_ORDER)


def draw_two_class_bootstrap(train: Dataset, index: int, n: int, seed: int) -> BootstrapSample:
    """Bootstrap ``index`` of ``n``, redrawn until it holds both classes.

    Attempt a uses seed + index + a * n so redraws never collide with the
    first-choice seeds of other members.
    """
    for attempt in range(MAX_REDRAWS):
        sample = bootstrap(train, seed + index + attempt * n)
        if _has_both_classes(train.labels[sample.rows]):
            sample.redraws = attempt
            if attempt:
                logger.warning(
                    "bootstrap_redrawn", member=index, attempts=attempt + 1, seed=sample.seed
                )
            return sample
    raise ConfigurationError(
        f"bootstrap {index} drew a single class in {MAX_REDRAWS} attempts "
        f"(train has {train.positives} positives / {train.negatives} negatives)"
    )


def _balanced_member(
    train: Dataset, index: int, n: int, smote_cfg: SmoteConfig, seed: int
) -> BootstrapSample:
    sample = draw_two_class_bootstrap(train, index, n, seed)
    sample.balanced_view = smote(sample.materialize(train), smote_cfg.derive(sample.seed))
    return sample


def bbb_generate(
    train: Dataset,
    n: int,
    smote_cfg: SmoteConfig | None = None,
    seed: int = 0,
    n_jobs: int | None = None,
) -> list[BootstrapSample]:
    """Draw ``n`` bootstraps and SMOTE-balance each one independently."""
    if n < 1:
        raise ConfigurationError(f"n must be >= 1, got {n}")
    if not _has_both_classes(train.labels):
        raise ConfigurationError("BBB needs both classes in the training set")
    smote_cfg = smote_cfg or SmoteConfig()

    samples = Parallel(n_jobs=n_jobs or settings.runtime.n_jobs)(
        delayed(_balanced_member)(train, i, n, smote_cfg, seed) for i in range(n)
    )

    logger.info(
        "bbb_generated",
        n=n,
        seed=seed,
        train_rows=train.n_rows,
        redraws=sum(s.redraws for s in samples),
    )
    return samples


def whole_set_balance(train: Dataset, smote_cfg: SmoteConfig | None = None) -> Dataset:
    """Standard balancing baseline: SMOTE the full training set once."""
    balanced = smote(train, smote_cfg or SmoteConfig())
    logger.info(
        "whole_set_balanced",
        rows_before=train.n_rows,
        rows_after=balanced.n_rows,
        positives=balanced.positives,
        negatives=balanced.negatives,
    )
    return balanced
