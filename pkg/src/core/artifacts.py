"""Model artifact files: a self-describing header plus the joblib-pickled object."""

from __future__ import annotations

from pathlib import Path
from typing import Any

import joblib

from src.core.errors import ArtifactError
from src.core.logging import get_logger

logger = get_logger("artifacts")

ARTIFACT_FORMAT = "bbb-artifact"
ARTIFACT_VERSION = 1


def _kind_of(obj: Any) -> tuple[str, dict]:
    # local imports: classifiers and pools import core, not the reverse
    from src.classifiers.base import Classifier
    from src.pool.pool import ClassifierPool

    if isinstance(obj, ClassifierPool):
        return "pool", obj.header()
    if isinstance(obj, Classifier):
        return "classifier", obj.describe()
    raise ArtifactError(f"cannot store an object of type {type(obj).__name__} as an artifact")


def save_artifact(obj: Any, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    kind, details = _kind_of(obj)
    # describe()/header() details never override the envelope keys
    header = {**details, "format": ARTIFACT_FORMAT, "version": ARTIFACT_VERSION, "kind": kind}
    joblib.dump({"header": header, "payload": obj}, path, compress=3)
    logger.info("artifact_saved", path=str(path), kind=kind)
    return path


def read_header(path: str | Path) -> dict:
    return _load(path)["header"]


def _load(path: str | Path) -> dict:
    path = Path(path)
    if not path.is_file():
        raise ArtifactError(f"artifact not found: {path}")
    try:
        blob = joblib.load(path)
    except Exception as exc:  # joblib surfaces pickle, zlib and EOF errors alike
        raise ArtifactError(f"unreadable artifact {path}: {exc}") from exc
    header = blob.get("header") if isinstance(blob, dict) else None
    if not isinstance(header, dict) or header.get("format") != ARTIFACT_FORMAT:
        raise ArtifactError(f"{path} is not a {ARTIFACT_FORMAT} file")
    if header.get("version") != ARTIFACT_VERSION:
        raise ArtifactError(
            f"{path} has artifact version {header.get('version')}, expected {ARTIFACT_VERSION}"
        )
    return blob


def load_artifact(path: str | Path, kind: str | None = None) -> Any:
    """Load an artifact, optionally requiring a kind ("classifier" or "pool")."""
    blob = _load(path)
    if kind is not None and blob["header"]["kind"] != kind:
        raise ArtifactError(f"{path} holds a {blob['header']['kind']}, expected a {kind}")
    logger.info("artifact_loaded", path=str(path), kind=blob["header"]["kind"])
    return blob["payload"]
