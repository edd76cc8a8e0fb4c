"""Dataset persistence as a single compressed .npz file."""

from __future__ import annotations

from pathlib import Path

import numpy as np
import scipy.sparse as sp

from src.core.errors import DatasetIOError
from src.core.logging import get_logger
from src.dataset.models import Dataset

logger = get_logger("store")


def save_dataset(data: Dataset, path: str | Path) -> Path:
    path = Path(path)
    if path.suffix != ".npz":
        path = path.with_suffix(".npz")  # numpy would append it anyway
    path.parent.mkdir(parents=True, exist_ok=True)
    features = data.features
    vocabulary = np.array(data.vocabulary if data.vocabulary is not None else [], dtype=str)
    np.savez_compressed(
        path,
        data=features.data,
        indices=features.indices,
        indptr=features.indptr,
        shape=np.array(features.shape, dtype=np.int64),
        labels=data.labels,
        vocabulary=vocabulary,
        has_vocabulary=np.array(data.vocabulary is not None),
    )
    logger.info("dataset_saved", path=str(path), rows=data.n_rows, features=data.n_features)
    return path


def load_dataset(path: str | Path) -> Dataset:
    path = Path(path)
    if not path.is_file():
        raise DatasetIOError(f"dataset file not found: {path}")
    with np.load(path, allow_pickle=False) as npz:
        features = sp.csr_matrix(
            (npz["data"], npz["indices"], npz["indptr"]), shape=tuple(npz["shape"])
        )
        vocabulary = tuple(str(v) for v in npz["vocabulary"]) if npz["has_vocabulary"] else None
        return Dataset(features, npz["labels"], vocabulary)
