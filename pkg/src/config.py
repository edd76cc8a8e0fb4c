"""Application configuration loaded from environment variables."""

from pathlib import Path

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict

PROJECT_ROOT = Path(__file__).parent.parent


class LogConfig(BaseSettings):
    model_config = SettingsConfigDict(env_file=".env", extra="ignore")

    level: str = Field(default="INFO", alias="LOG_LEVEL")
    format: str = Field(default="console", alias="LOG_FORMAT")


class RuntimeConfig(BaseSettings):
    model_config = SettingsConfigDict(env_file=".env", extra="ignore")

    n_jobs: int = Field(default=1, alias="BBB_N_JOBS")
    neighbor_chunk: int = Field(default=512, alias="BBB_NEIGHBOR_CHUNK")
    split_block_cells: int = Field(default=2_000_000, alias="BBB_SPLIT_BLOCK_CELLS")


# Algorithm defaults. None of these are given by the experimental protocol itself;
# they mirror the usual library defaults and every one can be overridden per experiment.
MODEL_DEFAULTS = {
    "k_neighbors": 5,          # SMOTE
    "dedup_before_smote": True,
    "knn_k": 5,
    "nb_alpha": 1.0,
    "max_depth": None,
    "min_samples_split": 2,
    "pool_size": 100,
    "forest_size": 10,
    "rf_feature_subsample": "sqrt",
    "dsel_fraction": 0.25,
    "region_k": 7,
    "metades_kp": 5,
    "consensus_threshold": 0.7,
    "selection_threshold": 0.5,
    "keep_fraction": 0.5,
    "kdn_k": 5,
    "min_feature_count": 10,
    "iterations": 30,
    "test_fraction": 0.2,
}

# Drebin corpus reference counts, used for sanity reporting only
DREBIN_REFERENCE = {
    "total": 129_013,
    "malware": 5_560,
}


class Settings:
    """Aggregated application settings."""

    def __init__(self) -> None:
        self.log = LogConfig()
        self.runtime = RuntimeConfig()


settings = Settings()
