"""Experiment engine.

Runs every (model, balance) arm over seeded stratified splits:
  split -> [DSEL carve-out] -> balance -> pool / model -> predict test -> metrics

Iteration i uses seed ``config.seed + i`` for the split, bootstraps, SMOTE
and DSEL. The test split never reaches training, balancing, DSEL or model
selection. An arm that fails is recorded with its reason and the rest continue.
"""

from __future__ import annotations

import time

import numpy as np

from src.balancing.bbb import whole_set_balance
from src.classifiers.base import Classifier
from src.classifiers.factory import train_base
from src.config import MODEL_DEFAULTS
from src.core.errors import ConfigurationError, DataError
from src.core.logging import bound_context, get_logger
from src.core.models import CLASS_ORDER, BalanceMode, ModelFamily
from src.dataset.models import Dataset, SplitPair
from src.dataset.split import stratified_split
from src.dynsel.dsel import Dsel, build_dsel
from src.dynsel.knop import KnopSelector
from src.dynsel.metades import MetaDesSelector, metades_train
from src.dynsel.ola import OlaSelector
from src.hardness.kdn import HardnessShift, hardness_shift
from src.harness.config import ExperimentConfig, ModelSpec, resolve_model
from src.harness.results import ExperimentResult, RunRecord, aggregate_records
from src.metrics.confusion import evaluate_predictions
from src.pool.pool import ClassifierPool, build_pool
from src.pool.static import single_best, static_selection

logger = get_logger("harness.engine")

# expected failure types; any other arm failure is logged with its traceback
EXPECTED_ARM_ERRORS = (ConfigurationError, DataError, ValueError)


class ExperimentEngine:
    """Runs an ExperimentConfig over one loaded dataset."""

    def __init__(self, config: ExperimentConfig, data: Dataset | None = None) -> None:
        self.config = config
        self._data = data
        self._selection_cache: dict[tuple[int, BalanceMode], Dsel | Exception] = {}
        self._warned_monolithic_bbb = False

    @property
    def data(self) -> Dataset:
        if self._data is None:
            self._data = self.config.dataset.load()
        return self._data

    def run(self) -> ExperimentResult:
        data = self.data
        if any(data.class_counts()[c] < 2 for c in CLASS_ORDER):
            raise ConfigurationError("experiment data needs >= 2 instances of each class")
        logger.info(
            "experiment_started",
            source=self.config.dataset.describe(),
            rows=data.n_rows,
            arms=len(self.config.arms),
            iterations=self.config.iterations,
        )

        result = ExperimentResult()
        for iteration in range(self.config.iterations):
            seed = self.config.iteration_seed(iteration)
            result.seeds.append(seed)
            with bound_context(iteration=iteration, seed=seed):
                split = stratified_split(data, self.config.test_fraction, seed)
                for model, balance in self.config.arms:
                    record = self.run_cell(split, iteration, model, balance, seed)
                    result.records.append(record)
            # pools of this iteration are no longer needed
            self._selection_cache.clear()

        result.aggregates = aggregate_records(result.records)
        logger.info(
            "experiment_complete",
            runs=len(result.records),
            failed=len(result.failures),
            arms=len(result.aggregates),
        )
        return result

    def run_cell(
        self, split: SplitPair, iteration: int, model: str, balance: BalanceMode, seed: int
    ) -> RunRecord:
        """Train and evaluate one arm on one split; failures become error records."""
        balance = BalanceMode(balance)
        start = time.perf_counter()
        try:
            predictions = self.predict_arm(resolve_model(model), balance, split, iteration, seed)
            metrics = evaluate_predictions(predictions, split.test.labels)
        except Exception as exc:
            logger.warning(
                "arm_failed",
                iteration=iteration,
                model=model,
                balance=balance.value,
                error_type=type(exc).__name__,
                error=str(exc),
                exc_info=not isinstance(exc, EXPECTED_ARM_ERRORS),
            )
            return RunRecord(
                iteration=iteration,
                model=model,
                balance=balance,
                seed=seed,
                wall_time=time.perf_counter() - start,
                error=f"{type(exc).__name__}: {exc}",
            )
        elapsed = time.perf_counter() - start
        logger.debug(
            "arm_complete",
            iteration=iteration,
            model=model,
            balance=balance.value,
            recall=round(metrics.recall, 4),
            g_mean=round(metrics.g_mean, 4),
            seconds=round(elapsed, 3),
        )
        return RunRecord(
            iteration=iteration,
            model=model,
            balance=balance,
            seed=seed,
            metrics=metrics,
            wall_time=elapsed,
        )

    def predict_arm(
        self, spec: ModelSpec, balance: BalanceMode, split: SplitPair, iteration: int, seed: int
    ) -> np.ndarray:
        test = split.test.features
        if spec.family == ModelFamily.MONOLITHIC:
            return self._train_monolithic(spec, balance, split.train, seed).predict(test)
        if spec.family == ModelFamily.BAGGING:
            return self._build_pool(spec, split.train, balance, seed).predict(test)
        return self._predict_selection(spec.name, balance, split, iteration, seed)

    def _train_monolithic(
        self, spec: ModelSpec, balance: BalanceMode, train: Dataset, seed: int
    ) -> Classifier:
        params = self.config.params
        if balance == BalanceMode.BBB:
            if not self._warned_monolithic_bbb:
                logger.warning("monolithic_bbb_resolved_to_whole_set", model=spec.name)
                self._warned_monolithic_bbb = True
            balance = BalanceMode.WHOLE_SET
        if balance == BalanceMode.WHOLE_SET:
            train = whole_set_balance(train, params.smote(seed))
        return train_base(spec.base_kind, train, params.learner_params(), seed)

    def _build_pool(
        self, spec: ModelSpec, train: Dataset, balance: BalanceMode, seed: int
    ) -> ClassifierPool:
        params = self.config.params
        return build_pool(
            train,
            base_kind=spec.base_kind,
            n=self.config.pool_size,
            balance=balance,
            smote_cfg=params.smote(seed),
            seed=seed,
            rf_feature_subsample=params.rf_feature_subsample if spec.random_forest else None,
            params=params.learner_params(),
            n_jobs=self.config.n_jobs,
        )

    def selection_dsel(
        self, split: SplitPair, iteration: int, balance: BalanceMode, seed: int
    ) -> Dsel:
        """Pool + DSEL shared by every static and dynamic arm of one (iteration, balance)."""
        key = (iteration, balance)
        if key not in self._selection_cache:
            params = self.config.params
            pool_spec = resolve_model(self.config.selection_pool)
            try:
                _, dsel = build_dsel(
                    split.train,
                    lambda pool_train: self._build_pool(pool_spec, pool_train, balance, seed),
                    dsel_fraction=params.dsel_fraction,
                    seed=seed,
                    min_rows=params.region_k,
                    policy=params.dsel_policy,
                )
                self._selection_cache[key] = dsel
            except Exception as exc:
                self._selection_cache[key] = exc
        cached = self._selection_cache[key]
        if isinstance(cached, Exception):
            raise cached
        return cached

    def _predict_selection(
        self, name: str, balance: BalanceMode, split: SplitPair, iteration: int, seed: int
    ) -> np.ndarray:
        params = self.config.params
        dsel = self.selection_dsel(split, iteration, balance, seed)
        pool = dsel.pool
        test = split.test.features
        if name == "single_best":
            return single_best(pool, dsel.data, params.ranking_metric).predict(test)
        if name == "static_selection":
            kept = static_selection(pool, dsel.data, params.keep_fraction, params.ranking_metric)
            return kept.predict(test)
        if name == "ola":
            return OlaSelector(pool, dsel, params.region_k).predict(test)
        if name == "knop":
            return KnopSelector(pool, dsel, params.region_k).predict(test)
        if name == "metades":
            meta = metades_train(
                pool,
                dsel,
                k=params.region_k,
                kp=params.metades_kp,
                consensus_threshold=params.consensus_threshold,
                seed=seed,
            )
            return MetaDesSelector(pool, dsel, meta, params.selection_threshold).predict(test)
        raise ConfigurationError(f"no selection method named {name!r}")


def run_experiment(config: ExperimentConfig, data: Dataset | None = None) -> ExperimentResult:
    """Run every arm of ``config``; ``data`` overrides the configured source."""
    return ExperimentEngine(config, data).run()


def hardness_data(
    data: Dataset,
    source: str = "train",
    test_fraction: float = MODEL_DEFAULTS["test_fraction"],
    seed: int = 0,
) -> Dataset:
    """Rows KDN is computed on: the train or test part of a seeded split, or everything."""
    if source == "full":
        return data
    split = stratified_split(data, test_fraction, seed)
    if source == "train":
        return split.train
    if source == "test":
        return split.test
    raise ConfigurationError(f"hardness source must be train, test or full, got {source!r}")


def run_hardness(config: ExperimentConfig, data: Dataset | None = None) -> HardnessShift:
    """KDN before and after whole-set SMOTE on the configured hardness source."""
    data = data if data is not None else config.dataset.load()
    rows = hardness_data(data, config.hardness.source, config.test_fraction, config.seed)
    balanced = whole_set_balance(rows, config.params.smote(config.seed))
    return hardness_shift(rows, balanced, config.params.kdn_k)
