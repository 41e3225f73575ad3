"""Numba-compiled hot loops.

Every function here has a twin in ``_numpy`` with identical inputs and
outputs; the test-suite checks the two agree bit for bit.
"""
import numpy as np
from numba import njit

_GAMMA = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)
_S30 = np.uint64(30)
_S27 = np.uint64(27)
_S31 = np.uint64(31)
_S32 = np.uint64(32)
_S11 = np.uint64(11)
_TWO_PI = 2.0 * np.pi
_INV_2_53 = 1.0 / 9007199254740992.0
_BIG = np.int64(1) << np.int64(62)


# --------------------------------------------------------------------------
# contingency

@njit(cache=True, nogil=True)
def count_pairs(a, b, k1, k2):
    out = np.zeros((k1, k2), np.int64)
    for p in range(a.shape[0]):
        out[a[p], b[p]] += 1
    return out


# --------------------------------------------------------------------------
# random streams (splitmix64, counter based)

@njit(cache=True, inline="always")
def _mix(z):
    z = (z ^ (z >> _S30)) * _MIX1
    z = (z ^ (z >> _S27)) * _MIX2
    return z ^ (z >> _S31)


@njit(cache=True, nogil=True)
def uniform_labels(seed, n, k):
    out = np.empty(n, np.int64)
    kk = np.uint64(k)
    s = np.uint64(seed)
    for r in range(n):
        s = s + _GAMMA
        x = _mix(s)
        out[r] = np.int64(((x >> _S32) * kk) >> _S32)
    return out


@njit(cache=True, nogil=True)
def clipped_gaussian_labels(seed, n, k):
    mean = (k + 1) / 2.0
    std = k / 4.0
    out = np.empty(n, np.int64)
    s = np.uint64(seed)
    z1 = 0.0
    for r in range(n):
        if r % 2 == 0:
            s = s + _GAMMA
            x1 = _mix(s)
            s = s + _GAMMA
            x2 = _mix(s)
            u1 = (np.float64(x1 >> _S11) + 1.0) * _INV_2_53
            u2 = np.float64(x2 >> _S11) * _INV_2_53
            rad = np.sqrt(-2.0 * np.log(u1))
            z0 = rad * np.cos(_TWO_PI * u2)
            z1 = rad * np.sin(_TWO_PI * u2)
            z = z0
        else:
            z = z1
        v = mean + std * z
        if v >= 0.0:
            q = np.floor(v + 0.5)
        else:
            q = -np.floor(-v + 0.5)
        if q < 1.0:
            q = 1.0
        elif q > k:
            q = np.float64(k)
        out[r] = np.int64(q) - 1
    return out


# --------------------------------------------------------------------------
# stable matching

@njit(cache=True)
def stable_match_prefs(prop_prefs, recv_rank):
    """Proposer-optimal stable matching from explicit preference tables.

    prop_prefs[i] lists receivers best first; recv_rank[j, i] is the
    position of proposer i in receiver j's list. Returns the partner of
    each receiver (-1 when unmatched).
    """
    n_prop, n_recv = prop_prefs.shape
    cursor = np.zeros(n_prop, np.int64)
    engaged = np.full(n_recv, -1, np.int64)
    stack = np.empty(n_prop, np.int64)
    for t in range(n_prop):
        stack[t] = n_prop - 1 - t
    top = n_prop
    while top > 0:
        i = stack[top - 1]
        if cursor[i] >= n_recv:
            top -= 1
            continue
        j = prop_prefs[i, cursor[i]]
        cursor[i] += 1
        cur = engaged[j]
        if cur < 0:
            engaged[j] = i
            top -= 1
        elif recv_rank[j, i] < recv_rank[j, cur]:
            engaged[j] = i
            stack[top - 1] = cur
    return engaged


_INSERT_MAX = 128


@njit(cache=True, inline="always")
def _next_batch(c, i, last_key, size, scratch, dest):
    # Write the next `size` receivers of proposer i, best first, among
    # those ranked strictly after last_key. Small batches use a bounded
    # insertion pass; larger ones sort every remaining candidate.
    k2 = c.shape[1]
    if size <= _INSERT_MAX:
        filled = 0
        for j in range(k2):
            key = c[i, j] * k2 + (k2 - 1 - j)
            if key >= last_key:
                continue
            if filled == size:
                if key <= scratch[size - 1]:
                    continue
                pos = size - 1
            else:
                pos = filled
                filled += 1
            while pos > 0 and scratch[pos - 1] < key:
                scratch[pos] = scratch[pos - 1]
                pos -= 1
            scratch[pos] = key
        for t in range(size):
            dest[t] = k2 - 1 - scratch[t] % k2
    else:
        cnt = 0
        for j in range(k2):
            key = c[i, j] * k2 + (k2 - 1 - j)
            if key < last_key:
                scratch[cnt] = key
                cnt += 1
        srt = np.sort(scratch[:cnt])
        for t in range(size):
            dest[t] = k2 - 1 - srt[cnt - 1 - t] % k2


@njit(cache=True)
def smbp_rows(c):
    """Row-proposing stable matching on a contingency matrix.

    Equivalent to building every preference list up front and running
    Gale-Shapley, but each proposer's list is materialised lazily in
    doubling batches, so typical cost is O(k1*k2) instead of
    O(k1*k2*log k2). Ties break towards the lower opposite-side index.
    """
    k1, k2 = c.shape
    n_prop = k1
    cap = max(16, 8 * k1)
    pool = np.empty(cap, np.int64)
    start = np.empty(k1, np.int64)
    avail = np.ones(k1, np.int64)
    # first refill grows with k2: deeper lists are likelier on wide matrices
    batch = np.full(k1, min(32, max(4, k2 // 128)), np.int64)
    last_key = np.empty(k1, np.int64)
    cursor = np.zeros(k1, np.int64)
    scratch = np.empty(max(k2, 8), np.int64)
    engaged = np.full(k2, -1, np.int64)
    # first choices: branch-free max reduction per row
    for i in range(k1):
        best = np.int64(-1)
        for j in range(k2):
            best = max(best, c[i, j] * k2 + (k2 - 1 - j))
        pool[i] = k2 - 1 - best % k2
        start[i] = i
        last_key[i] = best
    used = k1
    stack = np.empty(n_prop, np.int64)
    for t in range(n_prop):
        stack[t] = n_prop - 1 - t
    top = n_prop if k2 > 0 else 0
    while top > 0:
        i = stack[top - 1]
        if cursor[i] >= k2:
            top -= 1
            continue
        if avail[i] == 0:
            size = min(batch[i], k2 - cursor[i])
            if size > _INSERT_MAX:
                size = k2 - cursor[i]
            batch[i] *= 2
            if used + size > cap:
                while used + size > cap:
                    cap *= 2
                grown = np.empty(cap, np.int64)
                grown[:used] = pool[:used]
                pool = grown
            _next_batch(c, i, last_key[i], size, scratch, pool[used:used + size])
            jl = pool[used + size - 1]
            last_key[i] = c[i, jl] * k2 + (k2 - 1 - jl)
            start[i] = used
            avail[i] = size
            used += size
        j = pool[start[i]]
        start[i] += 1
        avail[i] -= 1
        cursor[i] += 1
        cur = engaged[j]
        if cur < 0:
            engaged[j] = i
            top -= 1
        elif c[i, j] > c[cur, j] or (c[i, j] == c[cur, j] and i < cur):
            engaged[j] = i
            stack[top - 1] = cur
    return engaged


# --------------------------------------------------------------------------
# greedy

@njit(cache=True)
def edge_order_desc(c):
    """Flat edge indices by weight descending, ties by flat index ascending."""
    k1, k2 = c.shape
    n = k1 * k2
    flat = c.reshape(n)
    if n == 0:
        return np.empty(0, np.int64)
    wmax = flat.max()
    wmin = flat.min()
    span = wmax - wmin + 1
    if span > 4 * n + 1024:
        return np.argsort(-flat, kind="mergesort")
    # counting sort, stable
    offs = np.zeros(span + 1, np.int64)
    for e in range(n):
        offs[wmax - flat[e] + 1] += 1
    for t in range(span):
        offs[t + 1] += offs[t]
    order = np.empty(n, np.int64)
    for e in range(n):
        b = wmax - flat[e]
        order[offs[b]] = e
        offs[b] += 1
    return order


@njit(cache=True)
def greedy_from_order(order, k1, k2):
    row_used = np.zeros(k1, np.bool_)
    col_used = np.zeros(k2, np.bool_)
    want = min(k1, k2)
    rows = np.empty(want, np.int64)
    cols = np.empty(want, np.int64)
    got = 0
    for e in order:
        if got == want:
            break
        i = e // k2
        j = e % k2
        if row_used[i] or col_used[j]:
            continue
        row_used[i] = True
        col_used[j] = True
        rows[got] = i
        cols[got] = j
        got += 1
    return rows[:got], cols[:got]


# --------------------------------------------------------------------------
# assignment

@njit(cache=True)
def hungarian_max(w):
    """Maximum-weight assignment of every row of ``w`` (rows <= cols).

    Shortest-augmenting-path Hungarian method with dual potentials,
    O(n^2 m). Integer arithmetic throughout so the optimum is exact.
    Returns the column assigned to each row.
    """
    n, m = w.shape
    u = np.zeros(n + 1, np.int64)
    v = np.zeros(m + 1, np.int64)
    p = np.zeros(m + 1, np.int64)
    way = np.zeros(m + 1, np.int64)
    minv = np.empty(m + 1, np.int64)
    used = np.empty(m + 1, np.bool_)
    for i in range(1, n + 1):
        p[0] = i
        j0 = 0
        minv[:] = _BIG
        used[:] = False
        while True:
            used[j0] = True
            i0 = p[j0]
            delta = _BIG
            j1 = 0
            ui0 = u[i0]
            for j in range(1, m + 1):
                if not used[j]:
                    cur = -w[i0 - 1, j - 1] - ui0 - v[j]
                    if cur < minv[j]:
                        minv[j] = cur
                        way[j] = j0
                    if minv[j] < delta:
                        delta = minv[j]
                        j1 = j
            for j in range(m + 1):
                if used[j]:
                    u[p[j]] += delta
                    v[j] -= delta
                else:
                    minv[j] -= delta
            j0 = j1
            if p[j0] == 0:
                break
        while True:
            j1 = way[j0]
            p[j0] = p[j1]
            j0 = j1
            if j0 == 0:
                break
    assign = np.full(n, -1, np.int64)
    for j in range(1, m + 1):
        if p[j] != 0:
            assign[p[j] - 1] = j - 1
    return assign
