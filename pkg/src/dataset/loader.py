"""Generic CSV dataset loader.

Expected layout: header row, numeric feature columns, final 0/1 label column.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np
import pandas as pd
import scipy.sparse as sp

from src.core.errors import DataParseError, DatasetIOError
from src.core.logging import get_logger
from src.dataset.models import Dataset

logger = get_logger("loader")


def _reject_ragged(fields: list[str]) -> None:
    raise DataParseError(f"inconsistent column count: line has {len(fields)} fields")


def load_csv(path: str | Path) -> Dataset:
    """Load a dense numeric CSV into a sparse Dataset.

    Row numbers in parse errors are 1-based file lines (the header is row 1).
    """
    path = Path(path)
    if not path.is_file():
        raise DatasetIOError(f"csv not found: {path}")

    df = pd.read_csv(
        path,
        dtype=str,
        keep_default_na=False,
        engine="python",
        on_bad_lines=_reject_ragged,
        skipinitialspace=True,
    )
    if df.shape[1] < 1:
        raise DataParseError("csv has no label column", row=1)

    vocabulary = tuple(str(c).strip() for c in df.columns[:-1])
    if df.empty:
        logger.warning("csv_empty", path=str(path))
        return Dataset(
            sp.csr_matrix((0, len(vocabulary)), dtype=np.float64),
            np.empty(0, dtype=np.int8),
            vocabulary,
        )

    ragged = df.isna().any(axis=1)
    if ragged.any():
        raise DataParseError("inconsistent column count", row=int(np.flatnonzero(ragged)[0]) + 2)

    numeric = df.apply(lambda col: pd.to_numeric(col.str.strip(), errors="coerce"))
    bad = numeric.isna().to_numpy()
    if bad.any():
        r, c = np.argwhere(bad)[0]
        value = df.iat[r, c]
        raise DataParseError(f"non-numeric value {value!r}", row=int(r) + 2, column=int(c) + 1)

    values = numeric.to_numpy(dtype=np.float64)
    features = values[:, :-1]
    raw_labels = values[:, -1]
    not_binary = ~np.isin(raw_labels, (0.0, 1.0))
    if not_binary.any():
        r = int(np.flatnonzero(not_binary)[0])
        raise DataParseError(
            f"label {raw_labels[r]!r} is not 0/1 (only binary labels are supported)",
            row=r + 2,
            column=values.shape[1],
        )
    if not np.isfinite(features).all():
        r, c = np.argwhere(~np.isfinite(features))[0]
        raise DataParseError("non-finite value", row=int(r) + 2, column=int(c) + 1)

    dataset = Dataset(sp.csr_matrix(features), raw_labels.astype(np.int8), vocabulary)
    logger.info(
        "csv_loaded",
        path=str(path),
        rows=dataset.n_rows,
        features=dataset.n_features,
        positives=dataset.positives,
    )
    return dataset
