"""Command-line entry point.

Usage:
  Ingest Drebin:     bbb ingest --feature-dir data/feature_vectors --manifest data/sha256_family.csv
  Summarize:         bbb summarize --npz data/drebin.npz
  From counts:       bbb summarize --counts 129013 5560
  Experiment:        bbb experiment --config config/experiment.json
  Compare balancing: bbb compare-balancing --config config/experiment.json
  Hardness:          bbb hardness --config config/experiment.json --source train
  Re-aggregate:      bbb report --runs results/runs.csv
  Train / evaluate:  bbb train --npz data/train.npz --model random_forest --out model.joblib
                     bbb evaluate --artifact model.joblib --npz data/test.npz

Exit codes: 0 success, 1 configuration error, 2 data error, 3 some arms failed.
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from src.core.errors import ConfigurationError, DataError
from src.core.logging import get_logger, setup_logging
from src.core.models import BalanceMode

logger = get_logger("main")

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_DATA = 2
EXIT_PARTIAL = 3


def _add_source_args(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("dataset source")
    group.add_argument("--csv", type=Path, help="CSV with feature columns and a final 0/1 label")
    group.add_argument("--npz", type=Path, help="Dataset saved by `bbb ingest`")
    group.add_argument("--feature-dir", type=Path, help="Drebin feature_vectors directory")
    group.add_argument("--manifest", type=Path, help="CSV listing malware sha256 identifiers")
    group.add_argument("--min-feature-count", type=int, default=None)
    group.add_argument("--synthetic", action="store_true", help="Two Gaussian blobs")
    group.add_argument("--n", type=int, default=None, help="Synthetic rows")
    group.add_argument("--ir", type=float, default=None, help="Synthetic imbalance ratio")
    group.add_argument("--dim", type=int, default=None, help="Synthetic feature count")
    group.add_argument("--separation", type=float, default=None)
    group.add_argument("--data-seed", type=int, default=None)


def _source_overrides(args: argparse.Namespace) -> dict | None:
    """DatasetSource fields from CLI flags, or None when no source flag was given."""
    if args.csv:
        return {"kind": "csv", "path": str(args.csv)}
    if args.npz:
        return {"kind": "npz", "path": str(args.npz)}
    if args.feature_dir or args.manifest:
        source = {
            "kind": "drebin",
            "feature_dir": str(args.feature_dir) if args.feature_dir else None,
            "label_manifest": str(args.manifest) if args.manifest else None,
        }
        if args.min_feature_count is not None:
            source["min_feature_count"] = args.min_feature_count
        return source
    if args.synthetic:
        source = {"kind": "synthetic"}
        for flag, key in (
            ("n", "n"),
            ("ir", "imbalance_ratio"),
            ("dim", "n_features"),
            ("separation", "separation"),
            ("data_seed", "seed"),
        ):
            if getattr(args, flag) is not None:
                source[key] = getattr(args, flag)
        return source
    return None


def _load_source(args: argparse.Namespace):
    from src.harness.config import DatasetSource

    raw = _source_overrides(args)
    if raw is None:
        raise ConfigurationError(
            "no dataset given: use --csv, --npz, --feature-dir/--manifest or --synthetic"
        )
    try:
        source = DatasetSource.model_validate(raw)
    except ValueError as exc:
        raise ConfigurationError(f"invalid dataset source: {exc}") from exc
    return source.load()


def _add_experiment_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", type=Path, help="Experiment JSON file")
    parser.add_argument("--models", type=str, help="Comma-separated model ids")
    parser.add_argument("--balances", type=str, help="Comma-separated: none,bbb,whole_set")
    parser.add_argument("--iterations", type=int)
    parser.add_argument("--pool-size", type=int)
    parser.add_argument("--seed", type=int)
    parser.add_argument("--out", type=Path, help="Output directory")
    parser.add_argument("--jobs", type=int, help="Parallel workers for pool training")
    _add_source_args(parser)


def _experiment_config(args: argparse.Namespace):
    from src.harness.config import ExperimentConfig

    overrides = {
        "models": args.models.split(",") if args.models else None,
        "balances": args.balances.split(",") if args.balances else None,
        "iterations": args.iterations,
        "pool_size": args.pool_size,
        "seed": args.seed,
        "output_dir": str(args.out) if args.out else None,
        "n_jobs": args.jobs,
        "dataset": _source_overrides(args),
    }
    if args.config:
        return ExperimentConfig.load(args.config, overrides)
    return ExperimentConfig().with_overrides(overrides)


def cmd_ingest(args: argparse.Namespace) -> int:
    from src.dataset.drebin import ingest_drebin
    from src.dataset.store import save_dataset
    from src.dataset.summary import summarize

    min_count = args.min_feature_count
    kwargs = {} if min_count is None else {"min_feature_count": min_count}
    data = ingest_drebin(args.feature_dir, args.manifest, **kwargs)
    path = save_dataset(data, args.out)
    print(summarize(data).summary())
    print(f"Saved: {path}")
    return EXIT_OK


def cmd_summarize(args: argparse.Namespace) -> int:
    from src.dataset.summary import summarize, summarize_counts

    if args.counts:
        total, positives = args.counts
        if not 0 <= positives <= total:
            raise ConfigurationError(f"positives ({positives}) must be within [0, {total}]")
        summary = summarize_counts(total, positives)
    else:
        summary = summarize(_load_source(args))
    print(summary.summary())
    return EXIT_OK


def _print_experiment(result) -> None:
    print("=" * 60)
    print(result.summary())
    print("=" * 60)


def cmd_experiment(args: argparse.Namespace) -> int:
    from src.harness.engine import run_experiment, run_hardness
    from src.harness.reports import emit_reports

    config = _experiment_config(args)
    start = time.time()
    data = config.dataset.load()
    result = run_experiment(config, data)
    hardness = run_hardness(config, data) if config.hardness.enabled else None
    emit_reports(
        result.records, config.output_dir, config=config, hardness=hardness, seeds=result.seeds
    )
    _print_experiment(result)
    print(f"Reports in {config.output_dir} ({time.time() - start:.1f}s)")
    return EXIT_PARTIAL if result.partial else EXIT_OK


def cmd_compare(args: argparse.Namespace) -> int:
    from src.harness.comparison import compare_balancing
    from src.harness.reports import emit_reports

    config = _experiment_config(args)
    table, result = compare_balancing(config)
    emit_reports(
        result.records, config.output_dir, config=config, comparison=table, seeds=result.seeds
    )
    _print_experiment(result)
    print(table.to_string(index=False, float_format=lambda v: f"{v * 100:.2f}"))
    return EXIT_PARTIAL if result.partial else EXIT_OK


def cmd_hardness(args: argparse.Namespace) -> int:
    from src.harness.engine import run_hardness
    from src.harness.reports import write_hardness_reports

    config = _experiment_config(args)
    overrides = {"hardness.source": args.source, "params.kdn_k": args.k}
    config = config.with_overrides(overrides)
    shift = run_hardness(config)
    paths = write_hardness_reports(shift, config.output_dir)
    print(f"KDN (k={config.params.kdn_k}) on {config.hardness.source} data, before -> after SMOTE")
    print(shift.summary())
    print(f"Wrote {len(paths)} files to {config.output_dir}")
    return EXIT_OK


def cmd_report(args: argparse.Namespace) -> int:
    from src.harness.reports import emit_reports, load_runs

    records = load_runs(args.runs)
    out = args.out or args.runs.parent
    emit_reports(records, out)
    print(f"Re-aggregated {len(records)} runs into {out}")
    return EXIT_OK


def cmd_train(args: argparse.Namespace) -> int:
    from src.balancing.bbb import whole_set_balance
    from src.balancing.smote import SmoteConfig
    from src.classifiers.factory import LearnerParams, train_base
    from src.config import MODEL_DEFAULTS
    from src.core.artifacts import save_artifact
    from src.core.models import ModelFamily
    from src.harness.config import resolve_model
    from src.pool.pool import build_pool

    spec = resolve_model(args.model)
    if spec.family not in (ModelFamily.MONOLITHIC, ModelFamily.BAGGING):
        raise ConfigurationError(
            f"{args.model} needs a DSEL at prediction time; train supports monolithic "
            "and bagging models"
        )
    data = _load_source(args)
    balance = BalanceMode(args.balance)
    smote_cfg = SmoteConfig(seed=args.seed)
    subsample = MODEL_DEFAULTS["rf_feature_subsample"] if spec.random_forest else None
    if spec.family == ModelFamily.MONOLITHIC:
        if balance != BalanceMode.NONE:
            data = whole_set_balance(data, smote_cfg)
        model = train_base(spec.base_kind, data, LearnerParams(), args.seed)
    else:
        model = build_pool(
            data,
            base_kind=spec.base_kind,
            n=args.pool_size or MODEL_DEFAULTS["pool_size"],
            balance=balance,
            smote_cfg=smote_cfg,
            seed=args.seed,
            rf_feature_subsample=subsample,
            n_jobs=args.jobs,
        )
    path = save_artifact(model, args.out)
    print(f"Saved {args.model} ({balance.value}) to {path}")
    return EXIT_OK


def cmd_evaluate(args: argparse.Namespace) -> int:
    from src.core.artifacts import load_artifact
    from src.metrics.confusion import evaluate_predictions

    model = load_artifact(args.artifact)
    data = _load_source(args)
    report = evaluate_predictions(model.predict(data.features), data.labels)
    print(report.summary())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bbb", description="Bootstrap-Based Balancing with dynamic classifier selection"
    )
    parser.add_argument("--log-level", type=str, default=None, help="Overrides LOG_LEVEL")
    parser.add_argument(
        "--log-format", choices=("console", "json"), default=None, help="Overrides LOG_FORMAT"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="Vectorize a Drebin corpus into an .npz dataset")
    p.add_argument("--feature-dir", type=Path, required=True)
    p.add_argument("--manifest", type=Path, required=True)
    p.add_argument("--min-feature-count", type=int, default=None)
    p.add_argument("--out", type=Path, default=Path("data/drebin.npz"))
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("summarize", help="Class counts and imbalance ratio")
    p.add_argument("--counts", type=int, nargs=2, metavar=("TOTAL", "POSITIVES"))
    _add_source_args(p)
    p.set_defaults(func=cmd_summarize)

    p = sub.add_parser("experiment", help="Run the seeded split/train/evaluate protocol")
    _add_experiment_args(p)
    p.set_defaults(func=cmd_experiment)

    p = sub.add_parser("compare-balancing", help="BBB vs whole-set balancing, paired means")
    _add_experiment_args(p)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("hardness", help="KDN instance hardness before and after SMOTE")
    _add_experiment_args(p)
    p.add_argument("--source", choices=("train", "test", "full"), default=None)
    p.add_argument("--k", type=int, default=None)
    p.set_defaults(func=cmd_hardness)

    p = sub.add_parser("report", help="Re-aggregate a runs.csv")
    p.add_argument("--runs", type=Path, required=True)
    p.add_argument("--out", type=Path, default=None)
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("train", help="Fit one model or pool and save it as an artifact")
    p.add_argument("--model", type=str, required=True)
    p.add_argument("--balance", choices=[b.value for b in BalanceMode], default="none")
    p.add_argument("--pool-size", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=None)
    p.add_argument("--out", type=Path, required=True)
    _add_source_args(p)
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("evaluate", help="Score a saved artifact on a dataset")
    p.add_argument("--artifact", type=Path, required=True)
    _add_source_args(p)
    p.set_defaults(func=cmd_evaluate)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        setup_logging(args.log_level, args.log_format)
    except ValueError as exc:
        print(f"ERROR: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        return args.func(args)
    except ConfigurationError as exc:
        logger.error("configuration_error", command=args.command, error=str(exc))
        print(f"ERROR: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except DataError as exc:
        logger.error("data_error", command=args.command, error=str(exc))
        print(f"ERROR: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
