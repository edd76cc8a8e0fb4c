"""Classifier pool construction (bagging, BBB, whole-set balanced bagging).

  balance=none       plain bootstraps of the training set
  balance=bbb        bootstraps balanced one by one (Bootstrap-Based Balancing)
  balance=whole_set  SMOTE the training set once, then plain bootstraps of it
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from joblib import Parallel, delayed

from src.balancing.bbb import bbb_generate, whole_set_balance
from src.balancing.bootstrap import bootstrap
from src.balancing.smote import SmoteConfig
from src.classifiers.base import Classifier, as_feature_matrix
from src.classifiers.factory import LearnerParams, resolve_feature_subsample, train_base
from src.config import MODEL_DEFAULTS, settings
from src.core.errors import ConfigurationError
from src.core.logging import get_logger
from src.core.models import CLASS_ORDER, BalanceMode, BaseKind
from src.dataset.models import Dataset
from src.pool.voting import vote

logger = get_logger("pool")


@dataclass(frozen=True)
class MemberProvenance:
    bootstrap_seed: int
    balancing_applied: bool
    redraws: int = 0


@dataclass
class ClassifierPool:
    """Ordered pool P = {c1..cn} with per-member provenance."""

    members: list[Classifier]
    provenance: list[MemberProvenance]
    base_kind: BaseKind
    balance: BalanceMode = BalanceMode.NONE
    seed: int = 0
    feature_subsample: int | None = None
    n_jobs: int = field(default=1, repr=False)

    def __post_init__(self) -> None:
        if not self.members:
            raise ConfigurationError("a pool needs at least one member")
        if len(self.provenance) != len(self.members):
            raise ConfigurationError(
                f"provenance length {len(self.provenance)} != members {len(self.members)}"
            )

    @property
    def n(self) -> int:
        return len(self.members)

    def _fan_out(self, method: str, x) -> list[np.ndarray]:
        if self.n_jobs == 1:
            return [getattr(m, method)(x) for m in self.members]
        return Parallel(n_jobs=self.n_jobs, prefer="threads")(
            delayed(getattr(m, method))(x) for m in self.members
        )

    def predictions(self, x) -> np.ndarray:
        """Member labels, shape (n_rows, n)."""
        x = as_feature_matrix(x)
        return np.column_stack(self._fan_out("predict", x)).astype(np.int8)

    def supports(self, x) -> np.ndarray:
        """Member class supports, shape (n_rows, n, 2)."""
        x = as_feature_matrix(x)
        return np.stack(self._fan_out("support", x), axis=1)

    def predict(self, x) -> np.ndarray:
        return vote(self.predictions(x))

    def subset(self, indices) -> ClassifierPool:
        indices = [int(i) for i in indices]
        return ClassifierPool(
            members=[self.members[i] for i in indices],
            provenance=[self.provenance[i] for i in indices],
            base_kind=self.base_kind,
            balance=self.balance,
            seed=self.seed,
            feature_subsample=self.feature_subsample,
            n_jobs=self.n_jobs,
        )

    def header(self) -> dict:
        return {
            "base_kind": self.base_kind.value,
            "n": self.n,
            "balance": self.balance.value,
            "seed": self.seed,
            "seeds": [p.bootstrap_seed for p in self.provenance],
            "feature_subsample": self.feature_subsample,
        }


def build_pool(
    train: Dataset,
    base_kind: BaseKind = BaseKind.TREE,
    n: int = MODEL_DEFAULTS["pool_size"],
    balance: BalanceMode = BalanceMode.NONE,
    smote_cfg: SmoteConfig | None = None,
    seed: int = 0,
    rf_feature_subsample: int | str | None = None,
    params: LearnerParams | None = None,
    n_jobs: int | None = None,
) -> ClassifierPool:
    """Train ``n`` members of ``base_kind``, each on its own bootstrap."""
    if n < 1:
        raise ConfigurationError(f"pool size must be >= 1, got {n}")
    if any(train.class_counts()[c] == 0 for c in CLASS_ORDER):
        raise ConfigurationError("pool training data must contain both classes")
    base_kind = BaseKind(base_kind)
    balance = BalanceMode(balance)
    smote_cfg = smote_cfg or SmoteConfig()
    n_jobs = n_jobs or settings.runtime.n_jobs

    subsample = None
    if rf_feature_subsample is not None:
        if base_kind not in (BaseKind.TREE, BaseKind.FOREST):
            raise ConfigurationError("rf_feature_subsample only applies to tree and forest pools")
        subsample = resolve_feature_subsample(rf_feature_subsample, train.n_features)

    if balance == BalanceMode.BBB:
        samples = bbb_generate(train, n, smote_cfg, seed, n_jobs=n_jobs)
        datasets = [s.balanced_view for s in samples]
        provenance = [MemberProvenance(s.seed, True, s.redraws) for s in samples]
    else:
        source = whole_set_balance(train, smote_cfg) if balance == BalanceMode.WHOLE_SET else train
        samples = [bootstrap(source, seed + i) for i in range(n)]
        datasets = [s.materialize(source) for s in samples]
        provenance = [
            MemberProvenance(s.seed, balance == BalanceMode.WHOLE_SET) for s in samples
        ]

    members = Parallel(n_jobs=n_jobs)(
        delayed(train_base)(base_kind, data, params, prov.bootstrap_seed, subsample)
        for data, prov in zip(datasets, provenance, strict=True)
    )

    logger.info(
        "pool_built",
        base_kind=base_kind.value,
        n=n,
        balance=balance.value,
        seed=seed,
        feature_subsample=subsample,
    )
    return ClassifierPool(
        members=list(members),
        provenance=provenance,
        base_kind=base_kind,
        balance=balance,
        seed=seed,
        feature_subsample=subsample,
        n_jobs=n_jobs,
    )
