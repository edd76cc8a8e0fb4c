"""Confusion-matrix metrics robust to class imbalance.

Positive = malware. Any ratio whose denominator is zero is reported as 0
and its name is recorded in ``MetricsReport.undefined``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from sklearn.metrics import confusion_matrix

from src.core.errors import ConfigurationError
from src.core.models import CLASS_ORDER

METRIC_NAMES = ("recall", "precision", "f1", "g_mean", "mcc", "accuracy")
TABLE_METRICS = ("recall", "f1", "g_mean", "mcc")


@dataclass(frozen=True)
class ConfusionMatrix:
    tp: int = 0
    fp: int = 0
    fn: int = 0
    tn: int = 0

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.fn + self.tn


@dataclass(frozen=True)
class MetricsReport:
    recall: float = 0.0
    precision: float = 0.0
    f1: float = 0.0
    g_mean: float = 0.0
    mcc: float = 0.0
    accuracy: float = 0.0
    undefined: tuple[str, ...] = field(default_factory=tuple)

    def as_dict(self) -> dict[str, float]:
        return {name: getattr(self, name) for name in METRIC_NAMES}

    def summary(self) -> str:
        lines = [f"{name:10s} {getattr(self, name):.4f}" for name in METRIC_NAMES]
        if self.undefined:
            lines.append(f"undefined (reported as 0): {', '.join(self.undefined)}")
        return "\n".join(lines)


def confusion(pred, truth) -> ConfusionMatrix:
    pred = np.asarray(pred).ravel()
    truth = np.asarray(truth).ravel()
    if pred.shape != truth.shape:
        raise ConfigurationError(f"pred has {pred.size} labels, truth has {truth.size}")
    if pred.size == 0:
        raise ConfigurationError("cannot build a confusion matrix from zero labels")
    tn, fp, fn, tp = confusion_matrix(truth, pred, labels=[int(c) for c in CLASS_ORDER]).ravel()
    return ConfusionMatrix(tp=int(tp), fp=int(fp), fn=int(fn), tn=int(tn))


def _ratio(num: float, den: float, name: str, undefined: list[str]) -> float:
    if den == 0:
        undefined.append(name)
        return 0.0
    return num / den


def compute_metrics(cm: ConfusionMatrix) -> MetricsReport:
    undefined: list[str] = []
    tp, fp, fn, tn = cm.tp, cm.fp, cm.fn, cm.tn

    recall = _ratio(tp, tp + fn, "recall", undefined)
    precision = _ratio(tp, tp + fp, "precision", undefined)
    specificity = _ratio(tn, tn + fp, "specificity", undefined)
    f1 = _ratio(2 * precision * recall, precision + recall, "f1", undefined)
    g_mean = math.sqrt(recall * specificity)

    factors = (tp + fp) * (tp + fn) * (tn + fp) * (tn + fn)
    if factors == 0:
        undefined.append("mcc")
        mcc = 0.0
    else:
        mcc = (tp * tn - fp * fn) / math.sqrt(factors)

    accuracy = _ratio(tp + tn, cm.total, "accuracy", undefined)
    return MetricsReport(
        recall=recall,
        precision=precision,
        f1=f1,
        g_mean=g_mean,
        mcc=mcc,
        accuracy=accuracy,
        undefined=tuple(undefined),
    )


def evaluate_predictions(pred, truth) -> MetricsReport:
    return compute_metrics(confusion(pred, truth))
