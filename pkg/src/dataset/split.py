"""Seeded stratified train/test splitting."""

from __future__ import annotations

import math

import numpy as np

from src.core.errors import ConfigurationError
from src.core.logging import get_logger
from src.core.models import CLASS_ORDER
from src.dataset.models import Dataset, SplitPair

logger = get_logger("split")


def class_test_count(class_count: int, test_fraction: float) -> int:
    """Per-class test size: round half up, then clamp.

    At least one row always stays in train; a class with two or more rows
    always sends at least one to test.
    """
    count = math.floor(class_count * test_fraction + 0.5)
    count = min(count, class_count - 1)
    if class_count >= 2:
        count = max(count, 1)
    return max(count, 0)


def stratified_split(data: Dataset, test_fraction: float, seed: int) -> SplitPair:
    """Split ``data`` per class, uniformly at random under ``seed``."""
    if not 0.0 < test_fraction < 1.0:
        raise ConfigurationError(f"test_fraction must be in (0, 1), got {test_fraction}")
    counts = data.class_counts()
    if any(counts[c] == 0 for c in CLASS_ORDER):
        raise ConfigurationError(
            f"stratified split needs both classes, got {counts[CLASS_ORDER[0]]} negatives "
            f"and {counts[CLASS_ORDER[1]]} positives"
        )

    rng = np.random.default_rng(seed)
    test_parts = []
    for label in CLASS_ORDER:
        members = np.flatnonzero(data.labels == label)
        n_test = class_test_count(members.size, test_fraction)
        test_parts.append(rng.permutation(members)[:n_test])

    test_index = np.sort(np.concatenate(test_parts))
    mask = np.ones(data.n_rows, dtype=bool)
    mask[test_index] = False
    train_index = np.flatnonzero(mask)

    logger.debug(
        "split_created",
        seed=seed,
        train=train_index.size,
        test=test_index.size,
        test_fraction=test_fraction,
    )
    return SplitPair(
        train=data.subset(train_index),
        test=data.subset(test_index),
        seed=seed,
        train_index=train_index,
        test_index=test_index,
    )
