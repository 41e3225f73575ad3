"""Domain types shared by every module.

All containers are frozen dataclasses wrapping read-only numpy arrays, so
they can be handed between threads without copying.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .errors import InvalidInput


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True, eq=False)
class Clustering:
    """Dense 0-based cluster assignment of ``n_points`` points into ``k`` clusters.

    Clusters with no members are allowed; ``k`` may exceed ``max(labels) + 1``.
    """

    labels: np.ndarray
    k: int

    def __post_init__(self):
        labels = np.ascontiguousarray(self.labels, dtype=np.int64)
        if labels.ndim != 1 or labels.size == 0:
            raise InvalidInput("a clustering needs a non-empty 1-d label sequence")
        k = int(self.k)
        if k < 1:
            raise InvalidInput(f"cluster count must be >= 1, got {k}")
        lo, hi = int(labels.min()), int(labels.max())
        if lo < 0 or hi >= k:
            raise InvalidInput(f"labels must lie in [0, {k - 1}], found [{lo}, {hi}]")
        if labels is self.labels:
            labels = labels.copy()
        object.__setattr__(self, "labels", _frozen(labels))
        object.__setattr__(self, "k", k)

    @property
    def n_points(self) -> int:
        return int(self.labels.size)

    def sizes(self) -> np.ndarray:
        return np.bincount(self.labels, minlength=self.k)

    def __eq__(self, other):
        if not isinstance(other, Clustering):
            return NotImplemented
        return self.k == other.k and np.array_equal(self.labels, other.labels)

    def __repr__(self):
        return f"Clustering(n_points={self.n_points}, k={self.k})"


def validate_clustering(raw: Sequence, k: Optional[int] = None) -> Clustering:
    """Remap arbitrary labels to dense indices by order of first occurrence.

    ``[5, 5, 9, 2]`` becomes ``[0, 0, 1, 2]`` with ``k=3``. Passing ``k``
    declares extra (empty) clusters; it must be at least the number of
    distinct labels.
    """
    arr = np.asarray(raw)
    if arr.ndim != 1 or arr.size == 0:
        raise InvalidInput("label sequence is empty")
    uniq, first, inverse = np.unique(arr, return_index=True, return_inverse=True)
    rank = np.empty(uniq.size, np.int64)
    rank[np.argsort(first, kind="stable")] = np.arange(uniq.size)
    labels = rank[inverse.reshape(-1)]
    n_distinct = int(uniq.size)
    if k is None:
        k = n_distinct
    elif k < n_distinct:
        raise InvalidInput(f"k={k} is smaller than the {n_distinct} distinct labels")
    return Clustering(labels, k)


@dataclass(frozen=True, eq=False)
class ContingencyMatrix:
    """``counts[i, j]`` is the number of points in row-cluster i and column-cluster j."""

    counts: np.ndarray

    def __post_init__(self):
        counts = np.array(self.counts, dtype=np.int64, copy=True, order="C")
        if counts.ndim != 2:
            raise InvalidInput("contingency counts must be a 2-d matrix")
        if counts.size and counts.min() < 0:
            raise InvalidInput("contingency counts must be non-negative")
        object.__setattr__(self, "counts", _frozen(counts))

    @property
    def k1(self) -> int:
        return self.counts.shape[0]

    @property
    def k2(self) -> int:
        return self.counts.shape[1]

    @property
    def total(self) -> int:
        return int(self.counts.sum())

    @property
    def T(self) -> "ContingencyMatrix":
        return ContingencyMatrix(self.counts.T)

    def __eq__(self, other):
        if not isinstance(other, ContingencyMatrix):
            return NotImplemented
        return np.array_equal(self.counts, other.counts)

    def __repr__(self):
        return f"ContingencyMatrix(k1={self.k1}, k2={self.k2}, total={self.total})"


@dataclass(frozen=True, eq=False)
class Pairing:
    """One-to-one partial map between row clusters and column clusters.

    ``weights[t]`` is always the contingency count at ``(rows[t], cols[t])``,
    whatever criterion chose the pair. ``excluded_rows``/``excluded_cols``
    list clusters a method refused to pair (centroid ratio skips empty
    clusters).
    """

    rows: np.ndarray
    cols: np.ndarray
    weights: np.ndarray
    method: str
    excluded_rows: tuple = ()
    excluded_cols: tuple = ()

    def __post_init__(self):
        rows = np.asarray(self.rows, dtype=np.int64).reshape(-1)
        cols = np.asarray(self.cols, dtype=np.int64).reshape(-1)
        weights = np.asarray(self.weights, dtype=np.int64).reshape(-1)
        if not (rows.size == cols.size == weights.size):
            raise InvalidInput("rows, cols and weights must have equal length")
        if rows.size:
            if min(rows.min(), cols.min()) < 0:
                raise InvalidInput("pairing indices must be non-negative")
            if np.bincount(rows).max() > 1 or np.bincount(cols).max() > 1:
                raise InvalidInput("a pairing must be one-to-one")
        order = np.argsort(rows, kind="stable")
        for name, arr in (("rows", rows), ("cols", cols), ("weights", weights)):
            object.__setattr__(self, name, _frozen(arr[order]))

    @classmethod
    def from_matrix(cls, m: ContingencyMatrix, rows, cols, method: str, **kw) -> "Pairing":
        rows = np.asarray(rows, dtype=np.int64)
        cols = np.asarray(cols, dtype=np.int64)
        return cls(rows, cols, m.counts[rows, cols], method, **kw)

    @classmethod
    def _sorted_unchecked(cls, m: ContingencyMatrix, rows, cols, method: str) -> "Pairing":
        # matcher fast path: rows ascending and one-to-one by construction
        self = object.__new__(cls)
        for name, arr in (("rows", rows), ("cols", cols), ("weights", m.counts[rows, cols])):
            object.__setattr__(self, name, _frozen(arr))
        object.__setattr__(self, "method", method)
        object.__setattr__(self, "excluded_rows", ())
        object.__setattr__(self, "excluded_cols", ())
        return self

    @property
    def pairs(self) -> list[tuple[int, int, int]]:
        return list(zip(self.rows.tolist(), self.cols.tolist(), self.weights.tolist()))

    @property
    def weight(self) -> int:
        return int(self.weights.sum())

    def pair_set(self) -> frozenset:
        return frozenset(zip(self.rows.tolist(), self.cols.tolist()))

    def __len__(self):
        return int(self.rows.size)

    def __eq__(self, other):
        if not isinstance(other, Pairing):
            return NotImplemented
        return (
            self.method == other.method
            and np.array_equal(self.rows, other.rows)
            and np.array_equal(self.cols, other.cols)
            and np.array_equal(self.weights, other.weights)
        )

    def __repr__(self):
        return f"Pairing(method={self.method!r}, size={len(self)}, weight={self.weight})"


@dataclass(frozen=True, eq=False)
class PreferenceTable:
    """Ranked opposite-side indices per cluster, best first.

    ``row_prefs[i]`` is a permutation of ``range(k2)``; ``col_prefs[j]`` of
    ``range(k1)``.
    """

    row_prefs: np.ndarray
    col_prefs: np.ndarray

    def __post_init__(self):
        rp = np.array(self.row_prefs, dtype=np.int64, order="C")
        cp = np.array(self.col_prefs, dtype=np.int64, order="C")
        if rp.ndim != 2 or cp.ndim != 2 or rp.shape != cp.shape[::-1]:
            raise InvalidInput("preference tables must be k1 x k2 and k2 x k1")
        object.__setattr__(self, "row_prefs", _frozen(rp))
        object.__setattr__(self, "col_prefs", _frozen(cp))

    @property
    def k1(self) -> int:
        return self.row_prefs.shape[0]

    @property
    def k2(self) -> int:
        return self.row_prefs.shape[1]


@dataclass(frozen=True, eq=False)
class FeatureDataset:
    """``n x d`` real-valued feature matrix, optionally with reference labels."""

    points: np.ndarray
    labels: Optional[Clustering] = field(default=None)

    def __post_init__(self):
        pts = np.array(self.points, dtype=np.float64, order="C")
        if pts.ndim == 1:
            pts = pts[:, None]
        if pts.ndim != 2 or pts.shape[0] == 0 or pts.shape[1] == 0:
            raise InvalidInput("features must be a non-empty n x d matrix with d >= 1")
        if self.labels is not None and self.labels.n_points != pts.shape[0]:
            raise InvalidInput("feature rows and labels disagree in length")
        object.__setattr__(self, "points", _frozen(pts))

    @property
    def n_points(self) -> int:
        return self.points.shape[0]

    @property
    def dim(self) -> int:
        return self.points.shape[1]
