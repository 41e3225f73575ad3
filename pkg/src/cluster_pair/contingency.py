from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import kernels
from .errors import InvalidInput
from .model import Clustering, ContingencyMatrix

THREADS_ENV = "CLUSTER_PAIR_THREADS"
_MIN_CHUNK = 1 << 18


def default_threads() -> int:
    raw = os.environ.get(THREADS_ENV, "").strip()
    if not raw:
        return 1
    try:
        return max(1, int(raw))
    except ValueError:
        raise InvalidInput(f"{THREADS_ENV} must be an integer, got {raw!r}") from None


def build_contingency(a: Clustering, b: Clustering, threads: int | None = None) -> ContingencyMatrix:
    """Count shared points for every (row-cluster, column-cluster) pair.

    With ``threads > 1`` the label arrays are cut into contiguous chunks
    whose partial matrices are summed; integer addition makes the result
    identical to the serial pass.
    """
    if a.n_points != b.n_points:
        raise InvalidInput(
            f"clusterings cover different point counts: {a.n_points} vs {b.n_points}"
        )
    if threads is None:
        threads = default_threads()
    n = a.n_points
    if threads <= 1 or n < 2 * _MIN_CHUNK:
        counts = kernels.count_pairs(a.labels, b.labels, a.k, b.k)
        return ContingencyMatrix(counts)
    bounds = np.linspace(0, n, threads + 1).astype(np.int64)
    chunks = [(lo, hi) for lo, hi in zip(bounds[:-1], bounds[1:]) if hi > lo]
    return ContingencyMatrix(
        contingency_from_chunks(a.labels, b.labels, a.k, b.k, chunks, threads)
    )


def contingency_from_chunks(la, lb, k1, k2, chunks, threads=1) -> np.ndarray:
    def part(span):
        lo, hi = span
        return kernels.count_pairs(la[lo:hi], lb[lo:hi], k1, k2)

    total = np.zeros((k1, k2), np.int64)
    with ThreadPoolExecutor(max_workers=threads) as pool:
        # summed in chunk order so the reduction order never varies
        for partial in pool.map(part, chunks):
            total += partial
    return total
