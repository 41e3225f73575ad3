"""Pure numpy / Python fallbacks for the kernels in ``_numba``.

Slower, but dependency-free beyond numpy. Selected when numba is missing
or ``CLUSTER_PAIR_NO_NUMBA=1``.
"""
import numpy as np

_GAMMA = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)
_INV_2_53 = 1.0 / 9007199254740992.0
_BIG = np.int64(1) << np.int64(62)
_CHUNK = 1 << 20


def count_pairs(a, b, k1, k2):
    flat = a * np.int64(k2) + b
    return np.bincount(flat, minlength=k1 * k2).astype(np.int64).reshape(k1, k2)


def _mix(z):
    z = (z ^ (z >> np.uint64(30))) * _MIX1
    z = (z ^ (z >> np.uint64(27))) * _MIX2
    return z ^ (z >> np.uint64(31))


def _stream(seed, start, count):
    # draws start .. start+count-1 of the splitmix64 sequence
    idx = np.arange(start + 1, start + count + 1, dtype=np.uint64)
    with np.errstate(over="ignore"):
        return _mix(np.uint64(seed) + idx * _GAMMA)


def uniform_labels(seed, n, k):
    out = np.empty(n, np.int64)
    kk = np.uint64(k)
    for lo in range(0, n, _CHUNK):
        hi = min(n, lo + _CHUNK)
        x = _stream(seed, lo, hi - lo)
        out[lo:hi] = (((x >> np.uint64(32)) * kk) >> np.uint64(32)).astype(np.int64)
    return out


def clipped_gaussian_labels(seed, n, k):
    mean = (k + 1) / 2.0
    std = k / 4.0
    out = np.empty(n, np.int64)
    step = _CHUNK  # even, so pairs never straddle chunks
    for lo in range(0, n, step):
        hi = min(n, lo + step)
        npairs = (hi - lo + 1) // 2
        x = _stream(seed, lo, 2 * npairs)
        u1 = ((x[0::2] >> np.uint64(11)).astype(np.float64) + 1.0) * _INV_2_53
        u2 = (x[1::2] >> np.uint64(11)).astype(np.float64) * _INV_2_53
        rad = np.sqrt(-2.0 * np.log(u1))
        z = np.empty(2 * npairs)
        z[0::2] = rad * np.cos(2.0 * np.pi * u2)
        z[1::2] = rad * np.sin(2.0 * np.pi * u2)
        v = mean + std * z[: hi - lo]
        q = np.where(v >= 0.0, np.floor(v + 0.5), -np.floor(-v + 0.5))
        out[lo:hi] = np.clip(q, 1.0, float(k)).astype(np.int64) - 1
    return out


def stable_match_prefs(prop_prefs, recv_rank):
    n_prop, n_recv = prop_prefs.shape
    cursor = [0] * n_prop
    engaged = [-1] * n_recv
    free = list(range(n_prop - 1, -1, -1))
    prefs = prop_prefs.tolist()
    rank = recv_rank.tolist()
    while free:
        i = free[-1]
        if cursor[i] >= n_recv:
            free.pop()
            continue
        j = prefs[i][cursor[i]]
        cursor[i] += 1
        cur = engaged[j]
        if cur < 0:
            engaged[j] = i
            free.pop()
        elif rank[j][i] < rank[j][cur]:
            engaged[j] = i
            free[-1] = cur
    return np.asarray(engaged, dtype=np.int64)


def smbp_rows(c):
    k1, k2 = c.shape
    prefs = np.argsort(-c, axis=1, kind="stable")
    # receiver j ranks proposers by column j, ties to lower row index
    col_order = np.argsort(-c, axis=0, kind="stable")
    rank = np.empty((k2, k1), np.int64)
    rank[np.arange(k2)[None, :], col_order] = np.arange(k1)[:, None]
    return stable_match_prefs(prefs, rank)


def edge_order_desc(c):
    return np.argsort(-c.reshape(-1), kind="stable")


def greedy_from_order(order, k1, k2):
    row_used = np.zeros(k1, bool)
    col_used = np.zeros(k2, bool)
    want = min(k1, k2)
    rows, cols = [], []
    for e in order.tolist():
        if len(rows) == want:
            break
        i, j = divmod(e, k2)
        if row_used[i] or col_used[j]:
            continue
        row_used[i] = col_used[j] = True
        rows.append(i)
        cols.append(j)
    return np.asarray(rows, np.int64), np.asarray(cols, np.int64)


def hungarian_max(w):
    n, m = w.shape
    u = np.zeros(n + 1, np.int64)
    v = np.zeros(m + 1, np.int64)
    p = np.zeros(m + 1, np.int64)
    way = np.zeros(m + 1, np.int64)
    neg = np.zeros((n + 1, m + 1), np.int64)
    neg[1:, 1:] = -w
    for i in range(1, n + 1):
        p[0] = i
        j0 = 0
        minv = np.full(m + 1, _BIG, np.int64)
        used = np.zeros(m + 1, bool)
        while True:
            used[j0] = True
            i0 = p[j0]
            free = ~used
            free[0] = False
            cur = neg[i0] - u[i0] - v
            better = free & (cur < minv)
            minv[better] = cur[better]
            way[better] = j0
            masked = np.where(free, minv, _BIG)
            j1 = int(np.argmin(masked))
            delta = masked[j1]
            u[p[used]] += delta
            v[used] -= delta
            minv[~used] -= delta
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
    hit = np.nonzero(p[1:])[0] + 1
    assign[p[hit] - 1] = hit - 1
    return assign
