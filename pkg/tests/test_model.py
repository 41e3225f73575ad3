import numpy as np
import pytest
from hypothesis import given, strategies as st

from cluster_pair import (
    Clustering, ContingencyMatrix, FeatureDataset, InvalidInput, Pairing, validate_clustering,
)


@pytest.mark.parametrize("raw, labels, k", [
    ([5, 5, 9, 2], [0, 0, 1, 2], 3),
    ([0], [0], 1),
    ([7, 7, 7], [0, 0, 0], 1),
    (["b", "a", "b"], [0, 1, 0], 2),
])
def test_first_occurrence_remap(raw, labels, k):
    c = validate_clustering(raw)
    assert c.labels.tolist() == labels
    assert c.k == k


def test_empty_labels_rejected():
    with pytest.raises(InvalidInput):
        validate_clustering([])


def test_declared_k_allows_empty_clusters():
    c = validate_clustering([3, 3, 4], k=5)
    assert c.k == 5
    assert c.sizes().tolist() == [2, 1, 0, 0, 0]
    with pytest.raises(InvalidInput):
        validate_clustering([1, 2, 3], k=2)


@given(st.lists(st.integers(-5, 5), min_size=1, max_size=60))
def test_remap_idempotent_and_partition_preserving(raw):
    c = validate_clustering(raw)
    assert validate_clustering(c.labels) == c
    raw = np.array(raw)
    same_raw = raw[:, None] == raw[None, :]
    same_new = c.labels[:, None] == c.labels[None, :]
    assert np.array_equal(same_raw, same_new)


def test_clustering_is_read_only():
    c = Clustering([0, 1, 1], 2)
    with pytest.raises(ValueError):
        c.labels[0] = 1
    with pytest.raises(InvalidInput):
        Clustering([0, 2], 2)


def test_contingency_matrix_validation():
    with pytest.raises(InvalidInput):
        ContingencyMatrix([[1, -1]])
    with pytest.raises(InvalidInput):
        ContingencyMatrix([1, 2])
    m = ContingencyMatrix([[1, 2], [3, 4]])
    assert (m.k1, m.k2, m.total) == (2, 2, 10)
    assert m.T.counts.tolist() == [[1, 3], [2, 4]]


def test_pairing_is_one_to_one_and_sorted():
    p = Pairing([1, 0], [0, 1], [5, 3], "x")
    assert p.pairs == [(0, 1, 3), (1, 0, 5)]
    assert p.weight == 8 and len(p) == 2
    with pytest.raises(InvalidInput):
        Pairing([0, 0], [0, 1], [1, 1], "x")
    with pytest.raises(InvalidInput):
        Pairing([0, 1], [1, 1], [1, 1], "x")


def test_feature_dataset_shape():
    f = FeatureDataset(np.zeros((4, 2)))
    assert f.n_points == 4
    with pytest.raises(InvalidInput):
        FeatureDataset(np.zeros((4, 0)))
