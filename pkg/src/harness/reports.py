"""Report files: aggregate results (machine and formatted), per-run records, manifest.

  results.csv      one row per (model, balance), metric mean/std pairs
  results.md       "mean(std)" x100 cells, imbalanced and balanced blocks
  runs.csv         every RunRecord, including failures
  comparison.csv   paired balancing comparison, when one was run
  hardness_*.csv   KDN scores and per-class CDFs, when computed
  manifest.json    config echo, seeds, package versions, failures
"""

from __future__ import annotations

from importlib import metadata
from pathlib import Path

import orjson
import pandas as pd

from src.core.errors import DatasetIOError, DataParseError
from src.core.logging import get_logger
from src.core.models import BalanceMode, ModelFamily
from src.hardness.kdn import HardnessShift
from src.harness.config import ExperimentConfig, resolve_model
from src.harness.results import ArmKey, RunRecord, aggregate_records
from src.metrics.aggregate import AggregateReport
from src.metrics.confusion import METRIC_NAMES, TABLE_METRICS, MetricsReport

logger = get_logger("harness.reports")

FLOAT_FORMAT = "%.6f"
RESULTS_COLUMNS = [
    "model",
    "balance",
    "recall_mean",
    "recall_std",
    "f1_mean",
    "f1_std",
    "gmean_mean",
    "gmean_std",
    "mcc_mean",
    "mcc_std",
    "iterations",
]
COLUMN_PREFIX = {"recall": "recall", "f1": "f1", "g_mean": "gmean", "mcc": "mcc"}
METRIC_TITLES = {"recall": "Recall", "f1": "F1", "g_mean": "G-Mean", "mcc": "MCC"}
RANK_MARKS = {1: "**", 2: "*", 3: "^"}
BLOCKS = ("imbalanced", "balanced")
VERSIONED_PACKAGES = ("bbb-dynsel", "numpy", "scipy", "scikit-learn", "imbalanced-learn", "pandas")


def results_frame(aggregates: dict[ArmKey, AggregateReport]) -> pd.DataFrame:
    rows = []
    for (model, balance), report in aggregates.items():
        row = {"model": model, "balance": balance.value}
        for metric in TABLE_METRICS:
            prefix = COLUMN_PREFIX[metric]
            row[f"{prefix}_mean"] = report.mean(metric)
            row[f"{prefix}_std"] = report.std(metric)
        row["iterations"] = report.runs
        rows.append(row)
    return pd.DataFrame(rows, columns=RESULTS_COLUMNS)


def table_blocks(
    aggregates: dict[ArmKey, AggregateReport],
) -> dict[str, dict[str, AggregateReport]]:
    """Split arms into the imbalanced block (balance=none) and the balanced block.

    The balanced block takes the bbb arm when a model has one, else its whole_set arm.
    """
    blocks: dict[str, dict[str, AggregateReport]] = {b: {} for b in BLOCKS}
    for (model, balance), report in aggregates.items():
        if balance == BalanceMode.NONE:
            blocks["imbalanced"][model] = report
        elif balance == BalanceMode.BBB or model not in blocks["balanced"]:
            blocks["balanced"][model] = report
    return blocks


def rank_models(
    aggregates: dict[ArmKey, AggregateReport], metric: str, block: str = "balanced"
) -> dict[str, int]:
    """1-based rank by mean within a block; equal means keep model order."""
    reports = table_blocks(aggregates)[block]
    ordered = sorted(reports, key=lambda m: -reports[m].mean(metric))
    return {model: rank for rank, model in enumerate(ordered, start=1)}


def dynamic_selectors_in_top3(
    aggregates: dict[ArmKey, AggregateReport],
    metrics: tuple[str, ...] = ("f1", "mcc"),
    block: str = "balanced",
) -> bool:
    """True when, for every metric, some dynamic selector ranks in the top three."""
    for metric in metrics:
        ranks = rank_models(aggregates, metric, block)
        dynamic = [
            r for m, r in ranks.items() if resolve_model(m).family == ModelFamily.DYNAMIC
        ]
        if not dynamic or min(dynamic) > 3:
            return False
    return True


def results_markdown(aggregates: dict[ArmKey, AggregateReport]) -> str:
    blocks = table_blocks(aggregates)
    ranks = {
        (block, metric): rank_models(aggregates, metric, block)
        for block in BLOCKS
        for metric in TABLE_METRICS
    }
    models = list(dict.fromkeys(model for model, _ in aggregates))
    titles = [METRIC_TITLES[m] for m in TABLE_METRICS]

    lines = [
        "# Results",
        "",
        "Cells are mean(std) x100 over iterations. Left block: imbalanced (balance=none). "
        "Right block: balanced (bbb, or whole_set where no bbb arm ran).",
        "Ranks within each block and metric: 1st `**`, 2nd `*`, 3rd `^`.",
        "",
        "| Model | " + " | ".join(titles) + " | " + " | ".join(titles) + " |",
        "|---|" + "---|" * (2 * len(titles)),
    ]
    for model in models:
        cells = []
        for block in BLOCKS:
            report = blocks[block].get(model)
            for metric in TABLE_METRICS:
                if report is None:
                    cells.append("-")
                    continue
                mark = RANK_MARKS.get(ranks[(block, metric)][model], "")
                cells.append(f"{report.cell(metric)}{mark}")
        lines.append(f"| {model} | " + " | ".join(cells) + " |")
    if any(resolve_model(m).family == ModelFamily.DYNAMIC for m in models):
        verdict = "yes" if dynamic_selectors_in_top3(aggregates) else "no"
        lines += ["", f"Dynamic selector in the balanced top three on F1 and MCC: {verdict}"]
    return "\n".join(lines) + "\n"


def runs_frame(records: list[RunRecord]) -> pd.DataFrame:
    columns = [
        "iteration", "model", "balance", "seed", *METRIC_NAMES, "undefined", "wall_time", "error"
    ]
    return pd.DataFrame([r.as_row() for r in records], columns=columns)


def load_runs(path: str | Path) -> list[RunRecord]:
    """Read a runs.csv back into RunRecords."""
    path = Path(path)
    if not path.is_file():
        raise DatasetIOError(f"runs file not found: {path}")
    frame = pd.read_csv(path, keep_default_na=False, dtype={"error": str, "undefined": str})
    missing = {"iteration", "model", "balance", "seed", *METRIC_NAMES} - set(frame.columns)
    if missing:
        raise DataParseError(f"{path} lacks columns: {', '.join(sorted(missing))}")

    records = []
    for i, row in enumerate(frame.itertuples(index=False), start=2):
        error = getattr(row, "error", "") or None
        metrics = None
        if error is None:
            try:
                values = {name: float(getattr(row, name)) for name in METRIC_NAMES}
            except ValueError as exc:
                raise DataParseError(f"bad metric value in {path}: {exc}", row=i) from exc
            undefined = getattr(row, "undefined", "")
            values["undefined"] = tuple(undefined.split(";")) if undefined else ()
            metrics = MetricsReport(**values)
        records.append(
            RunRecord(
                iteration=int(row.iteration),
                model=str(row.model),
                balance=BalanceMode(row.balance),
                seed=int(row.seed),
                metrics=metrics,
                wall_time=float(getattr(row, "wall_time", 0.0) or 0.0),
                error=error,
            )
        )
    return records


def hardness_frames(shift: HardnessShift) -> dict[str, pd.DataFrame]:
    summary = pd.DataFrame(
        [
            {
                "class": int(c),
                "before_mean": shift.before.class_mean(c),
                "after_mean": shift.after.class_mean(c),
                "delta": delta,
            }
            for c, delta in shift.deltas.items()
        ]
    )
    cdf = pd.concat(
        [
            shift.before.cdf_frame().assign(stage="before"),
            shift.after.cdf_frame().assign(stage="after"),
        ],
        ignore_index=True,
    )[["stage", "class", "score", "cumulative_fraction"]]
    return {
        "hardness_before.csv": shift.before.scores_frame(),
        "hardness_after.csv": shift.after.scores_frame(),
        "hardness_cdf.csv": cdf,
        "hardness_summary.csv": summary,
    }


def _package_versions() -> dict[str, str | None]:
    versions: dict[str, str | None] = {}
    for name in VERSIONED_PACKAGES:
        try:
            versions[name] = metadata.version(name)
        except metadata.PackageNotFoundError:
            versions[name] = None
    return versions


def build_manifest(
    records: list[RunRecord],
    config: ExperimentConfig | None = None,
    seeds: list[int] | None = None,
    files: list[str] | None = None,
) -> dict:
    if seeds is None:
        seeds = sorted({r.seed for r in records})
    aggregates = aggregate_records(records)
    return {
        "config": config.model_dump(mode="json") if config is not None else None,
        "seeds": seeds,
        "versions": _package_versions(),
        "runs": len(records),
        "dynamic_selector_in_top3": (
            dynamic_selectors_in_top3(aggregates) if aggregates else None
        ),
        "failures": [
            {
                "iteration": r.iteration,
                "model": r.model,
                "balance": r.balance.value,
                "error": r.error,
            }
            for r in records
            if not r.ok
        ],
        "files": files or [],
    }


def _write_csv(frame: pd.DataFrame, path: Path, float_format: str | None = FLOAT_FORMAT) -> Path:
    frame.to_csv(path, index=False, float_format=float_format, na_rep="", lineterminator="\n")
    return path


def emit_reports(
    records: list[RunRecord],
    out_dir: str | Path,
    config: ExperimentConfig | None = None,
    comparison: pd.DataFrame | None = None,
    hardness: HardnessShift | None = None,
    seeds: list[int] | None = None,
) -> list[Path]:
    """Write every report for ``records`` into ``out_dir``; returns the written paths."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []

    if not records:
        logger.warning("no_records_to_report", out_dir=str(out))
    else:
        aggregates = aggregate_records(records)
        written.append(_write_csv(results_frame(aggregates), out / "results.csv"))
        md = out / "results.md"
        md.write_text(results_markdown(aggregates), encoding="utf-8")
        written.append(md)
        written.append(_write_csv(runs_frame(records), out / "runs.csv", float_format=None))
        if comparison is not None:
            written.append(_write_csv(comparison, out / "comparison.csv"))
        if hardness is not None:
            for name, frame in hardness_frames(hardness).items():
                written.append(_write_csv(frame, out / name))

    manifest_path = out / "manifest.json"
    manifest = build_manifest(records, config, seeds, [p.name for p in written])
    manifest_path.write_bytes(
        orjson.dumps(manifest, option=orjson.OPT_INDENT_2 | orjson.OPT_SORT_KEYS)
    )
    written.append(manifest_path)
    logger.info("reports_written", out_dir=str(out), files=[p.name for p in written])
    return written


def write_hardness_reports(shift: HardnessShift, out_dir: str | Path) -> list[Path]:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    return [_write_csv(frame, out / name) for name, frame in hardness_frames(shift).items()]
