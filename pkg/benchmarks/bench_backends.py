"""Time each kernel under the numba and pure-numpy backends.

    python3 benchmarks/bench_backends.py [--k 100 500] [--rows 1000000] [--repeat 5]

Both backends are imported directly, so the environment flag does not
matter here. Results must agree exactly; the script aborts if they don't.
"""
import argparse
import time

import numpy as np

from cluster_pair.kernels import _numba as nb
from cluster_pair.kernels import _numpy as npk


def best_of(fn, repeat):
    fn()  # JIT compile / warm caches
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def same(x, y):
    if isinstance(x, tuple):
        return all(np.array_equal(a, b) for a, b in zip(x, y))
    return np.array_equal(x, y)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--k", type=int, nargs="+", default=[100, 300])
    ap.add_argument("--rows", type=int, default=1_000_000)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=7)
    args = ap.parse_args()
    seed = np.uint64(args.seed)

    print(f"{'kernel':<26}{'K':>6}{'numba s':>12}{'numpy s':>12}{'speedup':>10}")
    for k in args.k:
        a = nb.uniform_labels(seed, args.rows, k)
        b = nb.clipped_gaussian_labels(seed + np.uint64(1), args.rows, k)
        c = nb.count_pairs(a, b, k, k)
        cases = [
            ("uniform_labels", lambda m: m.uniform_labels(seed, args.rows, k)),
            ("clipped_gaussian_labels", lambda m: m.clipped_gaussian_labels(seed, args.rows, k)),
            ("count_pairs", lambda m: m.count_pairs(a, b, k, k)),
            ("smbp_rows", lambda m: m.smbp_rows(c)),
            ("edge_order_desc+greedy",
             lambda m: m.greedy_from_order(m.edge_order_desc(c), k, k)),
            ("hungarian_max", lambda m: m.hungarian_max(c)),
        ]
        for name, call in cases:
            if not same(call(nb), call(npk)):
                raise SystemExit(f"{name}: backends disagree at K={k}")
            t_nb = best_of(lambda: call(nb), args.repeat)
            t_np = best_of(lambda: call(npk), args.repeat)
            print(f"{name:<26}{k:>6}{t_nb:>12.6f}{t_np:>12.6f}{t_np / t_nb:>9.1f}x")


if __name__ == "__main__":
    main()
