"""Exact Euclidean k-nearest-neighbor search with deterministic tie-breaking.

The kNN learner, regions of competence, output-profile neighbors and KDN
all search through here so they share one rule: neighbors are ordered by
non-decreasing distance, equal distances by lower reference-row index.
SMOTE keeps imbalanced-learn's own neighbor search.
"""

from __future__ import annotations

import numpy as np
from sklearn.metrics.pairwise import euclidean_distances

from src.config import settings


def squared_distances(queries, reference) -> np.ndarray:
    """Dense matrix of squared Euclidean distances (queries × reference)."""
    dist = euclidean_distances(queries, reference, squared=True)
    return np.maximum(np.asarray(dist, dtype=np.float64), 0.0)


def _order_row(dist_row: np.ndarray, k: int) -> np.ndarray:
    """Indices of the k smallest entries, ties resolved by lower index."""
    n = dist_row.shape[0]
    if k >= n:
        return np.argsort(dist_row, kind="stable")[:k]
    kth = np.partition(dist_row, k - 1)[k - 1]
    candidates = np.flatnonzero(dist_row <= kth)
    order = np.lexsort((candidates, dist_row[candidates]))
    return candidates[order[:k]]


def k_nearest(
    queries,
    reference,
    k: int,
    exclude_self: bool = False,
    chunk_size: int | None = None,
) -> tuple[np.ndarray, np.ndarray]:
    """Return (indices, distances) of the k nearest reference rows per query.

    With ``exclude_self`` the queries must be the reference rows themselves;
    row i then never counts itself as a neighbor (duplicates still do).
    Distances are Euclidean (not squared).
    """
    n_queries = queries.shape[0]
    n_reference = reference.shape[0]
    available = n_reference - 1 if exclude_self else n_reference
    if k < 1 or k > available:
        raise ValueError(f"k={k} outside [1, {available}]")

    chunk = chunk_size or settings.runtime.neighbor_chunk
    indices = np.empty((n_queries, k), dtype=np.int64)
    distances = np.empty((n_queries, k), dtype=np.float64)

    for start in range(0, n_queries, chunk):
        stop = min(start + chunk, n_queries)
        block = queries[start:stop]
        dist = squared_distances(block, reference)
        if exclude_self:
            rows = np.arange(stop - start)
            dist[rows, rows + start] = np.inf
        for r in range(stop - start):
            idx = _order_row(dist[r], k)
            indices[start + r] = idx
            distances[start + r] = dist[r, idx]

    return indices, np.sqrt(distances)

