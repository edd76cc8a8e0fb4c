"""Paired comparison of two balancing modes: per-bootstrap (BBB) vs whole-set SMOTE."""

from __future__ import annotations

import pandas as pd

from src.core.logging import get_logger
from src.core.models import BalanceMode
from src.dataset.models import Dataset
from src.harness.config import ExperimentConfig, resolve_model
from src.harness.engine import run_experiment
from src.harness.results import ExperimentResult, RunRecord
from src.metrics.confusion import TABLE_METRICS

logger = get_logger("harness.comparison")

COMPARISON_COLUMNS = [
    "model",
    "family",
    "metric",
    "left_balance",
    "left_mean",
    "right_balance",
    "right_mean",
    "delta",
    "pairs",
    "left_wins",
]


def paired_wins(
    records: list[RunRecord], model: str, left: BalanceMode, right: BalanceMode, metric: str
) -> tuple[int, int]:
    """Iterations where both arms of ``model`` succeeded, and how many have left >= right."""
    values = {
        (BalanceMode(r.balance), r.iteration): getattr(r.metrics, metric)
        for r in records
        if r.ok and r.model == model
    }
    pairs = [
        (value, values[(right, iteration)])
        for (balance, iteration), value in values.items()
        if balance == left and (right, iteration) in values
    ]
    return len(pairs), sum(a >= b for a, b in pairs)


def comparison_table(
    result: ExperimentResult,
    models: list[str],
    left: BalanceMode = BalanceMode.BBB,
    right: BalanceMode = BalanceMode.WHOLE_SET,
    metrics: tuple[str, ...] = TABLE_METRICS,
) -> pd.DataFrame:
    """One row per (model, metric): both arms' means, ``left - right`` and paired wins.

    ``pairs`` counts iterations where both arms succeeded; ``left_wins`` how many
    of those have the left arm at least as good. A model whose arm has no
    successful run gets NaN means and zero pairs.
    """
    left, right = BalanceMode(left), BalanceMode(right)
    rows = []
    for model in models:
        family = resolve_model(model).family.value
        left_report = result.aggregates.get((model, left))
        right_report = result.aggregates.get((model, right))
        for metric in metrics:
            left_mean = left_report.mean(metric) if left_report else float("nan")
            right_mean = right_report.mean(metric) if right_report else float("nan")
            pairs, wins = paired_wins(result.records, model, left, right, metric)
            rows.append(
                {
                    "model": model,
                    "family": family,
                    "metric": metric,
                    "left_balance": left.value,
                    "left_mean": left_mean,
                    "right_balance": right.value,
                    "right_mean": right_mean,
                    "delta": left_mean - right_mean,
                    "pairs": pairs,
                    "left_wins": wins,
                }
            )
    return pd.DataFrame(rows, columns=COMPARISON_COLUMNS)


def compare_balancing(
    config: ExperimentConfig,
    data: Dataset | None = None,
    left: BalanceMode = BalanceMode.BBB,
    right: BalanceMode = BalanceMode.WHOLE_SET,
) -> tuple[pd.DataFrame, ExperimentResult]:
    """Run ``config`` restricted to the two balance arms and tabulate the paired means.

    With ``left == right`` both columns come from the same runs and every delta is 0.
    """
    balances = list(dict.fromkeys([BalanceMode(left), BalanceMode(right)]))
    restricted = config.model_copy(update={"balances": balances})
    result = run_experiment(restricted, data)
    table = comparison_table(result, restricted.models, left, right)
    logger.info(
        "balancing_compared",
        left=BalanceMode(left).value,
        right=BalanceMode(right).value,
        models=len(restricted.models),
        rows=len(table),
        g_mean_wins=_wins_summary(table, "g_mean"),
    )
    return table, result


def _wins_summary(table: pd.DataFrame, metric: str) -> dict[str, str]:
    rows = table[table["metric"] == metric]
    return {row.model: f"{row.left_wins}/{row.pairs}" for row in rows.itertuples()}
