"""Per-run records and their aggregation per (model, balance) arm."""

from __future__ import annotations

from dataclasses import dataclass, field

from src.core.models import BalanceMode
from src.metrics.aggregate import AggregateReport, aggregate
from src.metrics.confusion import METRIC_NAMES, MetricsReport

ArmKey = tuple[str, BalanceMode]


@dataclass(frozen=True)
class RunRecord:
    """One (iteration, model, balance) cell of an experiment."""

    iteration: int
    model: str
    balance: BalanceMode
    seed: int
    metrics: MetricsReport | None = None
    wall_time: float = 0.0
    error: str | None = None

    @property
    def ok(self) -> bool:
        return self.error is None and self.metrics is not None

    @property
    def arm(self) -> ArmKey:
        return self.model, BalanceMode(self.balance)

    def as_row(self) -> dict:
        row = {
            "iteration": self.iteration,
            "model": self.model,
            "balance": BalanceMode(self.balance).value,
            "seed": self.seed,
        }
        for name in METRIC_NAMES:
            row[name] = getattr(self.metrics, name) if self.metrics else None
        row["undefined"] = ";".join(self.metrics.undefined) if self.metrics else ""
        row["wall_time"] = self.wall_time
        row["error"] = self.error or ""
        return row


@dataclass
class ExperimentResult:
    records: list[RunRecord] = field(default_factory=list)
    aggregates: dict[ArmKey, AggregateReport] = field(default_factory=dict)
    seeds: list[int] = field(default_factory=list)

    @property
    def failures(self) -> list[RunRecord]:
        return [r for r in self.records if not r.ok]

    @property
    def partial(self) -> bool:
        return bool(self.failures)

    def summary(self) -> str:
        lines = [
            f"Runs: {len(self.records)} ({len(self.failures)} failed)",
            f"Arms aggregated: {len(self.aggregates)}",
        ]
        for (model, balance), report in self.aggregates.items():
            cells = "  ".join(f"{m}={report.cell(m)}" for m in ("recall", "f1", "g_mean", "mcc"))
            lines.append(f"  {model:18s} {balance.value:9s} {cells}")
        return "\n".join(lines)


def aggregate_records(records: list[RunRecord]) -> dict[ArmKey, AggregateReport]:
    """Aggregate successful runs per arm, arms in order of first appearance."""
    grouped: dict[ArmKey, list[MetricsReport]] = {}
    for record in records:
        if record.ok:
            grouped.setdefault(record.arm, []).append(record.metrics)
    return {arm: aggregate(runs) for arm, runs in grouped.items()}
