"""Multi-run aggregation in the "mean(std)" ×100 display format."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from src.core.errors import ConfigurationError
from src.metrics.confusion import METRIC_NAMES, MetricsReport

DISPLAY_SCALE = 100.0


@dataclass(frozen=True)
class MetricStats:
    mean: float
    std: float | None  # sample std; None with a single run
    minimum: float
    maximum: float


@dataclass(frozen=True)
class AggregateReport:
    """Per-metric mean and sample standard deviation over runs."""

    runs: int
    stats: dict[str, MetricStats] = field(default_factory=dict)

    def mean(self, metric: str) -> float:
        return self.stats[metric].mean

    def std(self, metric: str) -> float | None:
        return self.stats[metric].std

    def cell(self, metric: str) -> str:
        """Display form, e.g. ``86.69(0.68)``."""
        s = self.stats[metric]
        mean = f"{s.mean * DISPLAY_SCALE:.2f}"
        if s.std is None:
            return mean
        return f"{mean}({s.std * DISPLAY_SCALE:.2f})"


def aggregate(runs: list[MetricsReport]) -> AggregateReport:
    if not runs:
        raise ConfigurationError("cannot aggregate zero runs")
    stats = {}
    for name in METRIC_NAMES:
        values = np.array([getattr(r, name) for r in runs], dtype=np.float64)
        std = float(values.std(ddof=1)) if values.size >= 2 else None
        stats[name] = MetricStats(
            # clipped: float summation can land one ulp outside [min, max]
            mean=float(np.clip(values.mean(), values.min(), values.max())),
            std=std,
            minimum=float(values.min()),
            maximum=float(values.max()),
        )
    return AggregateReport(runs=len(runs), stats=stats)
