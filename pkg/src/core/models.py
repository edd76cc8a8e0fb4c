"""Shared enums for the balancing / ensemble pipeline."""

from __future__ import annotations

from enum import Enum, IntEnum


class Label(IntEnum):
    """Binary class labels. Column order of every support matrix follows this order."""

    NEGATIVE = 0  # benign
    POSITIVE = 1  # malware


CLASS_ORDER = (Label.NEGATIVE, Label.POSITIVE)


class BalanceMode(str, Enum):
    NONE = "none"
    BBB = "bbb"
    WHOLE_SET = "whole_set"


class BaseKind(str, Enum):
    TREE = "tree"
    KNN = "knn"
    NB = "nb"
    FOREST = "forest"


class RankingMetric(str, Enum):
    ACCURACY = "accuracy"
    G_MEAN = "g_mean"


class DselPolicy(str, Enum):
    HOLDOUT = "holdout"
    REUSE = "reuse"


class ModelFamily(str, Enum):
    MONOLITHIC = "monolithic"
    BAGGING = "bagging"
    STATIC = "static"
    DYNAMIC = "dynamic"
