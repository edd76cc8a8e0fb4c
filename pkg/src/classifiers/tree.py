"""CART decision tree with Gini impurity.

Greedy top-down growth. At every node each candidate feature is sorted once
and all thresholds (midpoints between consecutive distinct values) are
scored in a single vectorized pass, a block of features at a time so sparse
high-dimensional inputs never need a full dense copy. Ties in impurity go to
the lowest feature index, then the lowest threshold.

With ``feature_subsample`` set the tree runs in random-forest mode: each node
scores that many randomly drawn candidate features, drawing further blocks
only when the first has no usable split.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from src.classifiers.base import Classifier, as_feature_matrix
from src.config import MODEL_DEFAULTS, settings
from src.core.errors import ConfigurationError
from src.dataset.models import Dataset

IMPURITY_TOL = 1e-12


@dataclass(frozen=True)
class TreeNode:
    """Internal nodes route ``value <= threshold`` left. Leaves have feature_index -1."""

    feature_index: int
    threshold: float
    left: int
    right: int
    counts: tuple[float, float]

    @property
    def is_leaf(self) -> bool:
        return self.feature_index < 0


@dataclass(frozen=True)
class _Split:
    impurity: float
    feature: int
    threshold: float


def _score_block(
    node_x: sp.csr_matrix, y: np.ndarray, cols: np.ndarray
) -> _Split | None:
    """Best split among ``cols`` (ascending) for the rows in ``node_x``."""
    n = node_x.shape[0]
    block = node_x[:, cols].toarray()
    order = np.argsort(block, axis=0, kind="stable")
    values = np.take_along_axis(block, order, axis=0)
    left_pos = np.cumsum(y[order], axis=0)[:-1]

    left_n = np.arange(1, n, dtype=np.float64)[:, None]
    right_n = n - left_n
    right_pos = y.sum() - left_pos
    p_left = left_pos / left_n
    p_right = right_pos / right_n
    impurity = (left_n * 2 * p_left * (1 - p_left) + right_n * 2 * p_right * (1 - p_right)) / n
    impurity = np.where(values[1:] > values[:-1], impurity, np.inf)

    col_best = impurity.min(axis=0)
    best = col_best.min()
    if not np.isfinite(best):
        return None
    j = int(np.argmax(col_best <= best + IMPURITY_TOL))
    pos = int(np.argmax(impurity[:, j] <= col_best[j] + IMPURITY_TOL))
    lo, hi = values[pos, j], values[pos + 1, j]
    threshold = (lo + hi) / 2.0
    if threshold >= hi:
        threshold = lo
    return _Split(impurity=float(col_best[j]), feature=int(cols[j]), threshold=float(threshold))


class DecisionTree(Classifier):
    """Fitted CART tree stored as flat node arrays."""

    kind = "tree"

    def __init__(
        self,
        feature: np.ndarray,
        threshold: np.ndarray,
        left: np.ndarray,
        right: np.ndarray,
        counts: np.ndarray,
        n_features: int,
    ) -> None:
        self._feature = feature
        self._threshold = threshold
        self._left = left
        self._right = right
        self._counts = counts
        self.n_features = n_features
        for arr in (feature, threshold, left, right, counts):
            arr.setflags(write=False)

    @property
    def n_nodes(self) -> int:
        return int(self._feature.size)

    @property
    def n_leaves(self) -> int:
        return int(np.count_nonzero(self._feature < 0))

    @property
    def depth(self) -> int:
        depths = np.zeros(self.n_nodes, dtype=np.int64)
        for node in range(self.n_nodes):
            if self._feature[node] >= 0:
                depths[self._left[node]] = depths[node] + 1
                depths[self._right[node]] = depths[node] + 1
        return int(depths.max())

    @property
    def nodes(self) -> list[TreeNode]:
        return [
            TreeNode(
                feature_index=int(self._feature[i]),
                threshold=float(self._threshold[i]),
                left=int(self._left[i]),
                right=int(self._right[i]),
                counts=(float(self._counts[i, 0]), float(self._counts[i, 1])),
            )
            for i in range(self.n_nodes)
        ]

    def support(self, x) -> np.ndarray:
        x = as_feature_matrix(x)
        node = np.zeros(x.shape[0], dtype=np.int64)
        active = np.flatnonzero(self._feature[node] >= 0)
        while active.size:
            current = node[active]
            values = np.asarray(x[active, self._feature[current]]).ravel()
            node[active] = np.where(
                values <= self._threshold[current], self._left[current], self._right[current]
            )
            active = active[self._feature[node[active]] >= 0]
        counts = self._counts[node]
        return counts / counts.sum(axis=1, keepdims=True)

    def describe(self) -> dict:
        return {"learner": self.kind, "nodes": self.n_nodes, "leaves": self.n_leaves}


class _TreeBuilder:
    def __init__(
        self,
        max_depth: int | None,
        min_samples_split: int,
        feature_subsample: int | None,
        seed: int,
    ) -> None:
        self.max_depth = max_depth
        self.min_samples_split = max(min_samples_split, 2)
        self.feature_subsample = feature_subsample
        self.rng = np.random.default_rng(seed)
        self.block_cells = settings.runtime.split_block_cells

    def _best_split(self, node_x: sp.csr_matrix, y: np.ndarray) -> _Split | None:
        n = node_x.shape[0]
        candidates = np.flatnonzero(node_x.getnnz(axis=0) > 0)
        if n < 2 or candidates.size == 0:
            return None

        if self.feature_subsample:
            shuffled = self.rng.permutation(candidates)
            size = self.feature_subsample
            for start in range(0, shuffled.size, size):
                split = _score_block(node_x, y, np.sort(shuffled[start:start + size]))
                if split is not None:
                    return split
            return None

        width = max(1, self.block_cells // n)
        best: _Split | None = None
        for start in range(0, candidates.size, width):
            split = _score_block(node_x, y, candidates[start:start + width])
            if split is not None and (
                best is None or split.impurity < best.impurity - IMPURITY_TOL
            ):
                best = split
        return best

    def build(self, x: sp.csr_matrix, labels: np.ndarray) -> DecisionTree:
        y = labels.astype(np.float64)
        feature: list[int] = []
        threshold: list[float] = []
        left: list[int] = []
        right: list[int] = []
        counts: list[tuple[float, float]] = []

        def new_node(rows: np.ndarray) -> int:
            pos = float(y[rows].sum())
            feature.append(-1)
            threshold.append(0.0)
            left.append(-1)
            right.append(-1)
            counts.append((rows.size - pos, pos))
            return len(feature) - 1

        root_rows = np.arange(x.shape[0])
        stack = [(new_node(root_rows), root_rows, 0)]
        while stack:
            node, rows, depth = stack.pop()
            neg, pos = counts[node]
            if neg == 0 or pos == 0 or rows.size < self.min_samples_split:
                continue
            if self.max_depth is not None and depth >= self.max_depth:
                continue

            node_x = x[rows]
            split = self._best_split(node_x, y[rows])
            if split is None:
                continue

            column = node_x[:, [split.feature]].toarray().ravel()
            goes_left = column <= split.threshold
            left_rows, right_rows = rows[goes_left], rows[~goes_left]
            feature[node] = split.feature
            threshold[node] = split.threshold
            left[node] = new_node(left_rows)
            right[node] = new_node(right_rows)
            stack.append((right[node], right_rows, depth + 1))
            stack.append((left[node], left_rows, depth + 1))

        return DecisionTree(
            feature=np.asarray(feature, dtype=np.int64),
            threshold=np.asarray(threshold, dtype=np.float64),
            left=np.asarray(left, dtype=np.int64),
            right=np.asarray(right, dtype=np.int64),
            counts=np.asarray(counts, dtype=np.float64),
            n_features=x.shape[1],
        )


def train_decision_tree(
    data: Dataset,
    max_depth: int | None = MODEL_DEFAULTS["max_depth"],
    min_samples_split: int = MODEL_DEFAULTS["min_samples_split"],
    feature_subsample: int | None = None,
    seed: int = 0,
) -> DecisionTree:
    """Grow a CART tree on ``data``; ``seed`` only matters with feature_subsample."""
    if data.n_rows == 0:
        raise ConfigurationError("cannot train a decision tree on an empty dataset")
    if max_depth is not None and max_depth < 0:
        raise ConfigurationError(f"max_depth must be >= 0, got {max_depth}")
    if feature_subsample is not None and feature_subsample < 1:
        raise ConfigurationError(f"feature_subsample must be >= 1, got {feature_subsample}")
    builder = _TreeBuilder(max_depth, min_samples_split, feature_subsample, seed)
    return builder.build(data.features, data.labels)
