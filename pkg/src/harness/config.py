"""Experiment configuration: a JSON file validated into pydantic models."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Any, Literal

import orjson
from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from src.balancing.smote import SmoteConfig
from src.classifiers.factory import LearnerParams
from src.config import MODEL_DEFAULTS
from src.core.errors import ConfigurationError, DatasetIOError
from src.core.logging import get_logger
from src.core.models import BalanceMode, BaseKind, DselPolicy, ModelFamily, RankingMetric
from src.dataset.models import Dataset

logger = get_logger("harness.config")


@dataclass(frozen=True)
class ModelSpec:
    name: str
    family: ModelFamily
    base_kind: BaseKind | None = None
    random_forest: bool = False

    @property
    def uses_selection_pool(self) -> bool:
        return self.family in (ModelFamily.STATIC, ModelFamily.DYNAMIC)


MODEL_REGISTRY: dict[str, ModelSpec] = {
    "decision_tree": ModelSpec("decision_tree", ModelFamily.MONOLITHIC, BaseKind.TREE),
    "knn": ModelSpec("knn", ModelFamily.MONOLITHIC, BaseKind.KNN),
    "nb": ModelSpec("nb", ModelFamily.MONOLITHIC, BaseKind.NB),
    "bagging_tree": ModelSpec("bagging_tree", ModelFamily.BAGGING, BaseKind.TREE),
    "bagging_knn": ModelSpec("bagging_knn", ModelFamily.BAGGING, BaseKind.KNN),
    "bagging_nb": ModelSpec("bagging_nb", ModelFamily.BAGGING, BaseKind.NB),
    "random_forest": ModelSpec("random_forest", ModelFamily.BAGGING, BaseKind.TREE, True),
    "bagging_forest": ModelSpec("bagging_forest", ModelFamily.BAGGING, BaseKind.FOREST, True),
    "single_best": ModelSpec("single_best", ModelFamily.STATIC),
    "static_selection": ModelSpec("static_selection", ModelFamily.STATIC),
    "ola": ModelSpec("ola", ModelFamily.DYNAMIC),
    "knop": ModelSpec("knop", ModelFamily.DYNAMIC),
    "metades": ModelSpec("metades", ModelFamily.DYNAMIC),
}


def resolve_model(name: str) -> ModelSpec:
    try:
        return MODEL_REGISTRY[name]
    except KeyError:
        known = ", ".join(MODEL_REGISTRY)
        raise ConfigurationError(f"unknown model {name!r}; expected one of: {known}") from None


class DatasetSource(BaseModel):
    """Where the experiment's data comes from."""

    model_config = ConfigDict(extra="forbid")

    kind: Literal["drebin", "csv", "npz", "synthetic"] = "synthetic"
    feature_dir: Path | None = None
    label_manifest: Path | None = None
    min_feature_count: int = Field(default=MODEL_DEFAULTS["min_feature_count"], ge=1)
    path: Path | None = None
    # synthetic blobs
    n: int = Field(default=2000, ge=2)
    imbalance_ratio: float = Field(default=20.0, ge=1.0)
    n_features: int = Field(default=2, ge=1)
    separation: float = 2.0
    seed: int = 0

    @model_validator(mode="after")
    def _check_kind_fields(self) -> DatasetSource:
        if self.kind == "drebin" and (self.feature_dir is None or self.label_manifest is None):
            raise ValueError("drebin source needs feature_dir and label_manifest")
        if self.kind in ("csv", "npz") and self.path is None:
            raise ValueError(f"{self.kind} source needs path")
        return self

    def describe(self) -> str:
        if self.kind == "drebin":
            return f"drebin:{self.feature_dir}"
        if self.kind in ("csv", "npz"):
            return f"{self.kind}:{self.path}"
        return f"synthetic:n={self.n},ir={self.imbalance_ratio},d={self.n_features}"

    def load(self) -> Dataset:
        from src.dataset.drebin import ingest_drebin
        from src.dataset.loader import load_csv
        from src.dataset.store import load_dataset
        from src.dataset.synthetic import make_blobs_dataset

        if self.kind == "drebin":
            return ingest_drebin(self.feature_dir, self.label_manifest, self.min_feature_count)
        if self.kind == "csv":
            return load_csv(self.path)
        if self.kind == "npz":
            return load_dataset(self.path)
        return make_blobs_dataset(
            n=self.n,
            imbalance_ratio=self.imbalance_ratio,
            n_features=self.n_features,
            separation=self.separation,
            seed=self.seed,
        )


class Hyperparameters(BaseModel):
    model_config = ConfigDict(extra="forbid")

    k_neighbors: int = Field(default=MODEL_DEFAULTS["k_neighbors"], ge=1)
    dedup_before_smote: bool = MODEL_DEFAULTS["dedup_before_smote"]
    knn_k: int = Field(default=MODEL_DEFAULTS["knn_k"], ge=1)
    nb_alpha: float = Field(default=MODEL_DEFAULTS["nb_alpha"], gt=0)
    forest_size: int = Field(default=MODEL_DEFAULTS["forest_size"], ge=1)
    max_depth: int | None = Field(default=MODEL_DEFAULTS["max_depth"], ge=1)
    min_samples_split: int = Field(default=MODEL_DEFAULTS["min_samples_split"], ge=2)
    rf_feature_subsample: int | Literal["sqrt"] = MODEL_DEFAULTS["rf_feature_subsample"]
    dsel_fraction: float = Field(default=MODEL_DEFAULTS["dsel_fraction"], gt=0, lt=1)
    dsel_policy: DselPolicy = DselPolicy.HOLDOUT
    region_k: int = Field(default=MODEL_DEFAULTS["region_k"], ge=1)
    metades_kp: int = Field(default=MODEL_DEFAULTS["metades_kp"], ge=1)
    consensus_threshold: float = Field(default=MODEL_DEFAULTS["consensus_threshold"], gt=0, le=1)
    selection_threshold: float = Field(default=MODEL_DEFAULTS["selection_threshold"], ge=0, le=1)
    keep_fraction: float = Field(default=MODEL_DEFAULTS["keep_fraction"], gt=0, le=1)
    ranking_metric: RankingMetric = RankingMetric.ACCURACY
    kdn_k: int = Field(default=MODEL_DEFAULTS["kdn_k"], ge=1)

    def learner_params(self) -> LearnerParams:
        return LearnerParams(
            max_depth=self.max_depth,
            min_samples_split=self.min_samples_split,
            knn_k=self.knn_k,
            nb_alpha=self.nb_alpha,
            forest_size=self.forest_size,
        )

    def smote(self, seed: int) -> SmoteConfig:
        return SmoteConfig(
            k_neighbors=self.k_neighbors,
            dedup_before_smote=self.dedup_before_smote,
            seed=seed,
        )


class HardnessOptions(BaseModel):
    model_config = ConfigDict(extra="forbid")

    enabled: bool = False
    source: Literal["train", "test", "full"] = "train"


class ExperimentConfig(BaseModel):
    """One experiment: every (model, balance) arm over ``iterations`` seeded splits."""

    model_config = ConfigDict(extra="forbid")

    dataset: DatasetSource = Field(default_factory=DatasetSource)
    models: list[str] = Field(default_factory=lambda: ["decision_tree", "bagging_tree", "knop"])
    balances: list[BalanceMode] = Field(
        default_factory=lambda: [BalanceMode.NONE, BalanceMode.BBB]
    )
    iterations: int = Field(default=MODEL_DEFAULTS["iterations"], ge=1)
    test_fraction: float = Field(default=MODEL_DEFAULTS["test_fraction"], gt=0, lt=1)
    pool_size: int = Field(default=MODEL_DEFAULTS["pool_size"], ge=1)
    selection_pool: Literal[
        "random_forest", "bagging_forest", "bagging_tree", "bagging_knn", "bagging_nb"
    ] = "random_forest"
    params: Hyperparameters = Field(default_factory=Hyperparameters)
    hardness: HardnessOptions = Field(default_factory=HardnessOptions)
    seed: int = 0
    output_dir: Path = Path("results")
    n_jobs: int | None = None

    @model_validator(mode="after")
    def _check_models(self) -> ExperimentConfig:
        if not self.models:
            raise ValueError("at least one model is required")
        if not self.balances:
            raise ValueError("at least one balance mode is required")
        unknown = [m for m in self.models if m not in MODEL_REGISTRY]
        if unknown:
            raise ValueError(f"unknown models: {', '.join(unknown)}")
        if len(set(self.models)) != len(self.models):
            raise ValueError("models must be unique")
        if len(set(self.balances)) != len(self.balances):
            raise ValueError("balances must be unique")
        return self

    @property
    def arms(self) -> list[tuple[str, BalanceMode]]:
        return [(m, b) for m in self.models for b in self.balances]

    def iteration_seed(self, iteration: int) -> int:
        return self.seed + iteration

    @classmethod
    def from_dict(cls, raw: dict[str, Any]) -> ExperimentConfig:
        try:
            return cls.model_validate(raw)
        except ValidationError as exc:
            raise ConfigurationError(f"invalid experiment config: {exc}") from exc

    @classmethod
    def load(cls, path: str | Path, overrides: dict[str, Any] | None = None) -> ExperimentConfig:
        """Read a JSON config file and apply top-level ``overrides`` (CLI flags) on top."""
        path = Path(path)
        if not path.is_file():
            raise DatasetIOError(f"config file not found: {path}")
        try:
            raw = orjson.loads(path.read_bytes())
        except orjson.JSONDecodeError as exc:
            raise ConfigurationError(f"config {path} is not valid JSON: {exc}") from exc
        if not isinstance(raw, dict):
            raise ConfigurationError(f"config {path} must hold a JSON object")
        merged = merge_overrides(raw, overrides or {})
        config = cls.from_dict(merged)
        logger.info(
            "config_loaded", path=str(path), models=config.models, iterations=config.iterations
        )
        return config

    def with_overrides(self, overrides: dict[str, Any]) -> ExperimentConfig:
        return self.from_dict(merge_overrides(self.model_dump(mode="json"), overrides))


def merge_overrides(raw: dict[str, Any], overrides: dict[str, Any]) -> dict[str, Any]:
    """Shallow merge, descending one level into nested sections ("params.region_k" style keys)."""
    merged = {**raw}
    for key, value in overrides.items():
        if value is None:
            continue
        if "." in key:
            section, field = key.split(".", 1)
            merged[section] = {**merged.get(section, {}), field: value}
        else:
            merged[key] = value
    return merged
