"""Backend selection for the hot loops.

The numba backend is used when numba imports cleanly, unless the
environment sets ``CLUSTER_PAIR_NO_NUMBA`` to a truthy value, in which
case the pure numpy backend is used. Both expose the same functions.
"""
import os

from . import _numpy as numpy_backend

ENV_FLAG = "CLUSTER_PAIR_NO_NUMBA"


def _wants_numba() -> bool:
    return os.environ.get(ENV_FLAG, "").strip().lower() not in ("1", "true", "yes", "on")


numba_backend = None
try:
    from . import _numba as numba_backend
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba_backend = None

if numba_backend is not None and _wants_numba():
    backend = numba_backend
    BACKEND_NAME = "numba"
else:
    backend = numpy_backend
    BACKEND_NAME = "numpy"

count_pairs = backend.count_pairs
uniform_labels = backend.uniform_labels
clipped_gaussian_labels = backend.clipped_gaussian_labels
stable_match_prefs = backend.stable_match_prefs
smbp_rows = backend.smbp_rows
edge_order_desc = backend.edge_order_desc
greedy_from_order = backend.greedy_from_order
hungarian_max = backend.hungarian_max

__all__ = [
    "BACKEND_NAME",
    "ENV_FLAG",
    "backend",
    "numba_backend",
    "numpy_backend",
    "count_pairs",
    "uniform_labels",
    "clipped_gaussian_labels",
    "stable_match_prefs",
    "smbp_rows",
    "edge_order_desc",
    "greedy_from_order",
    "hungarian_max",
]
