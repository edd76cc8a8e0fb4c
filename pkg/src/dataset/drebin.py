"""Drebin-format ingestion.

Layout: one plain-text file per application in ``feature_dir`` (file stem is
the application's sha256, one ``category::feature`` string per line) plus a
CSV manifest whose ``sha256`` column lists the malware applications. Every
application not in the manifest is benign.
"""

from __future__ import annotations

from collections import Counter
from pathlib import Path

import numpy as np
import pandas as pd
import scipy.sparse as sp

from src.config import DREBIN_REFERENCE, MODEL_DEFAULTS
from src.core.errors import ConfigurationError, ConsistencyError, DatasetIOError
from src.core.logging import get_logger
from src.core.models import Label
from src.dataset.models import Dataset

logger = get_logger("drebin")

MANIFEST_COLUMN = "sha256"


def _read_features(path: Path) -> set[str]:
    with path.open(encoding="utf-8", errors="replace") as fh:
        return {line.strip() for line in fh if line.strip()}


def load_malware_manifest(label_manifest: str | Path) -> set[str]:
    """Read the set of malware file stems from the manifest CSV."""
    path = Path(label_manifest)
    if not path.is_file():
        raise DatasetIOError(f"label manifest not found: {path}")
    df = pd.read_csv(path, dtype=str)
    df.columns = [c.strip().lower() for c in df.columns]
    if MANIFEST_COLUMN not in df.columns:
        raise ConsistencyError(f"manifest {path} has no '{MANIFEST_COLUMN}' column")
    return {s.strip() for s in df[MANIFEST_COLUMN].dropna() if s.strip()}


def ingest_drebin(
    feature_dir: str | Path,
    label_manifest: str | Path,
    min_feature_count: int = MODEL_DEFAULTS["min_feature_count"],
) -> Dataset:
    """Build a binary one-hot dataset from a Drebin feature directory.

    Keeps features present in at least ``min_feature_count`` applications.
    Rows follow the lexicographic order of file names and the vocabulary is
    sorted, so repeated ingests are identical.
    """
    if min_feature_count < 1:
        raise ConfigurationError(f"min_feature_count must be >= 1, got {min_feature_count}")

    directory = Path(feature_dir)
    if not directory.is_dir():
        raise DatasetIOError(f"feature directory not found: {directory}")
    malware = load_malware_manifest(label_manifest)

    files = sorted((p for p in directory.iterdir() if p.is_file()), key=lambda p: p.name)
    stems = {p.stem for p in files}
    missing = sorted(malware - stems)
    if missing:
        raise ConsistencyError(
            f"{len(missing)} manifest entries have no feature file, e.g. {missing[0]}"
        )

    app_features: list[set[str]] = []
    document_freq: Counter[str] = Counter()
    for path in files:
        feats = _read_features(path)
        app_features.append(feats)
        document_freq.update(feats)

    vocabulary = sorted(f for f, count in document_freq.items() if count >= min_feature_count)
    if not vocabulary:
        raise ConfigurationError(
            f"no feature occurs in >= {min_feature_count} applications; vocabulary is empty"
        )
    column = {name: j for j, name in enumerate(vocabulary)}

    indptr = [0]
    indices: list[int] = []
    for feats in app_features:
        cols = sorted(column[f] for f in feats if f in column)
        indices.extend(cols)
        indptr.append(len(indices))

    features = sp.csr_matrix(
        (np.ones(len(indices), dtype=np.float64), np.asarray(indices, dtype=np.int64), indptr),
        shape=(len(files), len(vocabulary)),
    )
    labels = np.array(
        [Label.POSITIVE if p.stem in malware else Label.NEGATIVE for p in files], dtype=np.int8
    )

    published = (DREBIN_REFERENCE["total"], DREBIN_REFERENCE["malware"])
    logger.info(
        "drebin_ingested",
        apps=len(files),
        malware=int(labels.sum()),
        raw_features=len(document_freq),
        kept_features=len(vocabulary),
        min_feature_count=min_feature_count,
        matches_published_counts=(len(files), int(labels.sum())) == published,
    )
    return Dataset(features, labels, tuple(vocabulary))
