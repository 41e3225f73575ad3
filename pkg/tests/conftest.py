import numpy as np
import pytest
from hypothesis import strategies as st

from cluster_pair import ContingencyMatrix
from cluster_pair.kernels import _numba, _numpy


@pytest.fixture(params=["numba", "numpy"])
def backend(request):
    return _numba if request.param == "numba" else _numpy


@st.composite
def matrices(draw, max_k=7, max_v=100, min_k=1):
    k1 = draw(st.integers(min_k, max_k))
    k2 = draw(st.integers(min_k, max_k))
    flat = draw(st.lists(st.integers(0, max_v), min_size=k1 * k2, max_size=k1 * k2))
    return ContingencyMatrix(np.array(flat, dtype=np.int64).reshape(k1, k2))


def random_matrix(rng, max_k, max_v=100, min_k=1):
    k1, k2 = rng.integers(min_k, max_k + 1, size=2)
    return ContingencyMatrix(rng.integers(0, max_v + 1, size=(k1, k2)))


def distinct_matrix(rng, max_k):
    """Rows and columns each hold pairwise-distinct values (all entries distinct)."""
    k1, k2 = rng.integers(1, max_k + 1, size=2)
    vals = rng.permutation(k1 * k2 * 3)[: k1 * k2]
    return ContingencyMatrix(vals.reshape(k1, k2))


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(RESULTS):
            terminalreporter.write_line(line)
