"""Cluster pairing algorithms.

All matchers take a :class:`ContingencyMatrix` (centroid ratio also takes
features) and return a :class:`Pairing` whose weights are contingency
counts, so every method is scored on the same scale.

Preferences are strict: a row cluster ranks columns by shared count,
descending, and breaks ties towards the lower column index (columns rank
rows symmetrically). Every method here is deterministic.
"""
from __future__ import annotations

import itertools
from typing import Literal

import numpy as np
from scipy.spatial.distance import cdist

from . import kernels
from .contingency import build_contingency
from .errors import InvalidInput, OracleTooLarge
from .model import Clustering, ContingencyMatrix, FeatureDataset, Pairing, PreferenceTable

Side = Literal["row", "col"]

BRUTEFORCE_LIMIT = 9


def _side(proposer_side: str) -> str:
    if proposer_side in ("row", "rows", "r"):
        return "row"
    if proposer_side in ("col", "column", "cols", "columns", "c"):
        return "col"
    raise InvalidInput(f"proposer side must be 'row' or 'col', got {proposer_side!r}")


def _empty(method: str) -> Pairing:
    z = np.empty(0, np.int64)
    return Pairing(z, z, z, method)


def build_preferences(m: ContingencyMatrix) -> PreferenceTable:
    c = m.counts
    return PreferenceTable(
        row_prefs=np.argsort(-c, axis=1, kind="stable"),
        col_prefs=np.argsort(-c.T, axis=1, kind="stable"),
    )


def _rank_of(prefs: np.ndarray) -> np.ndarray:
    # rank[j, prefs[j, t]] = t
    n, width = prefs.shape
    rank = np.empty((n, width), np.int64)
    rank[np.arange(n)[:, None], prefs] = np.arange(width)[None, :]
    return rank


def stable_match(
    prefs: PreferenceTable,
    proposer_side: Side = "row",
    matrix: ContingencyMatrix | None = None,
) -> Pairing:
    """Gale-Shapley deferred acceptance on explicit preference lists.

    Returns the proposer-optimal stable matching, of size ``min(k1, k2)``.
    Pair weights are read from ``matrix`` when given, else left at zero.
    """
    side = _side(proposer_side)
    if prefs.k1 == 0 or prefs.k2 == 0:
        return _empty("stable")
    if side == "row":
        engaged = kernels.stable_match_prefs(prefs.row_prefs, _rank_of(prefs.col_prefs))
        cols = np.flatnonzero(engaged >= 0)
        rows = engaged[cols]
    else:
        engaged = kernels.stable_match_prefs(prefs.col_prefs, _rank_of(prefs.row_prefs))
        rows = np.flatnonzero(engaged >= 0)
        cols = engaged[rows]
    if matrix is None:
        return Pairing(rows, cols, np.zeros(rows.size, np.int64), "stable")
    return Pairing.from_matrix(matrix, rows, cols, "stable")


def smbp_pair(m: ContingencyMatrix, proposer_side: Side = "row") -> Pairing:
    """Stable Matching Based Pairing.

    Same result as ``stable_match(build_preferences(m), proposer_side)``;
    the kernel builds each proposer's list lazily instead of sorting every
    row up front.
    """
    side = _side(proposer_side)
    if m.k1 == 0 or m.k2 == 0:
        return _empty("smbp")
    if side == "row":
        engaged = kernels.smbp_rows(m.counts)
        cols = np.flatnonzero(engaged >= 0)
        rows = engaged[cols]
        order = np.argsort(rows)
        rows, cols = rows[order], cols[order]
    else:
        engaged = kernels.smbp_rows(np.ascontiguousarray(m.counts.T))
        rows = np.flatnonzero(engaged >= 0)
        cols = engaged[rows]
    return Pairing._sorted_unchecked(m, rows, cols, "smbp")


def mwm_pair(m: ContingencyMatrix) -> Pairing:
    """Exact maximum-weight one-to-one pairing (rectangular assignment)."""
    if m.k1 == 0 or m.k2 == 0:
        return _empty("mwm")
    c = m.counts
    if m.k1 <= m.k2:
        rows = np.arange(m.k1)
        cols = kernels.hungarian_max(c)
    else:
        cols = np.arange(m.k2)
        rows = kernels.hungarian_max(np.ascontiguousarray(c.T))
        order = np.argsort(rows)
        rows, cols = rows[order], cols[order]
    return Pairing._sorted_unchecked(m, rows, cols, "mwm")


def mwm_bruteforce(m: ContingencyMatrix, limit: int = BRUTEFORCE_LIMIT) -> Pairing:
    """Exhaustive optimum over every injection of the smaller side into the larger.

    Test oracle only; refuses instances with ``max(k1, k2) > limit``.
    """
    big = max(m.k1, m.k2)
    if big > limit:
        raise OracleTooLarge(f"brute force limited to max(k1, k2) <= {limit}, got {big}")
    if m.k1 == 0 or m.k2 == 0:
        return _empty("mwm-bruteforce")
    transpose = m.k1 > m.k2
    c = m.counts.T if transpose else m.counts
    small, large = c.shape
    perms = np.array(list(itertools.permutations(range(large), small)), dtype=np.int64)
    totals = c[np.arange(small)[None, :], perms].sum(axis=1)
    best = perms[int(np.argmax(totals))]
    rows, cols = np.arange(small), best
    if transpose:
        rows, cols = cols, rows
    return Pairing.from_matrix(m, rows, cols, "mwm-bruteforce")


def mmm_pair(m: ContingencyMatrix) -> Pairing:
    """Maximum Match Measure: greedy pairing on edges sorted heaviest first.

    Ties go to the lower row index, then the lower column index. Stops once
    ``min(k1, k2)`` pairs are accepted.
    """
    if m.k1 == 0 or m.k2 == 0:
        return _empty("mmm")
    order = kernels.edge_order_desc(m.counts)
    rows, cols = kernels.greedy_from_order(order, m.k1, m.k2)
    order = np.argsort(rows)
    return Pairing._sorted_unchecked(m, rows[order], cols[order], "mmm")


def blocking_pair_exists(m: ContingencyMatrix, p: Pairing) -> tuple[bool, tuple[int, int] | None]:
    """Look for a pair that would rather be matched to each other.

    Returns ``(True, (i, j))`` for the heaviest blocking pair (first in
    row-major order among equals), or ``(False, None)`` when ``p`` is stable under the strict
    count-then-index preferences.
    """
    c = m.counts
    k1, k2 = c.shape
    row_partner = np.full(k1, k2, np.int64)
    col_partner = np.full(k2, k1, np.int64)
    row_partner[p.rows] = p.cols
    col_partner[p.cols] = p.rows
    row_w = np.full(k1, -1, np.int64)
    col_w = np.full(k2, -1, np.int64)
    row_w[p.rows] = c[p.rows, p.cols]
    col_w[p.cols] = c[p.rows, p.cols]
    jj = np.arange(k2)[None, :]
    ii = np.arange(k1)[:, None]
    row_wants = (c > row_w[:, None]) | ((c == row_w[:, None]) & (jj < row_partner[:, None]))
    col_wants = (c > col_w[None, :]) | ((c == col_w[None, :]) & (ii < col_partner[None, :]))
    hits = np.flatnonzero(row_wants & col_wants)
    if hits.size == 0:
        return False, None
    i, j = divmod(int(hits[np.argmax(c.reshape(-1)[hits])]), k2)
    return True, (i, j)


def _centroids(points: np.ndarray, c: Clustering) -> tuple[np.ndarray, np.ndarray]:
    sizes = np.bincount(c.labels, minlength=c.k)
    sums = np.stack(
        [np.bincount(c.labels, weights=points[:, d], minlength=c.k) for d in range(points.shape[1])],
        axis=1,
    )
    present = np.flatnonzero(sizes > 0)
    return sums[present] / sizes[present, None], present


def cr_pair(data: FeatureDataset, a: Clustering, b: Clustering) -> Pairing:
    """Centroid Ratio pairing: greedy nearest-centroid matching.

    Centroids are per-cluster feature means; pairs are taken in order of
    ascending Euclidean distance (ties by row, then column). Empty clusters
    have no centroid and are reported in ``excluded_rows``/``excluded_cols``.
    """
    if not (data.n_points == a.n_points == b.n_points):
        raise InvalidInput(
            f"features cover {data.n_points} points but clusterings cover "
            f"{a.n_points} and {b.n_points}"
        )
    m = build_contingency(a, b)
    ca, present_a = _centroids(data.points, a)
    cb, present_b = _centroids(data.points, b)
    dist = cdist(ca, cb)
    order = np.argsort(dist.reshape(-1), kind="stable")
    r, c = kernels.greedy_from_order(order, present_a.size, present_b.size)
    excluded_rows = tuple(sorted(set(range(a.k)) - set(present_a.tolist())))
    excluded_cols = tuple(sorted(set(range(b.k)) - set(present_b.tolist())))
    return Pairing.from_matrix(
        m, present_a[r], present_b[c], "cr",
        excluded_rows=excluded_rows, excluded_cols=excluded_cols,
    )


MATCHERS = {
    "smbp": smbp_pair,
    "mwm": mwm_pair,
    "mmm": mmm_pair,
}
