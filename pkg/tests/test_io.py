import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cluster_pair import Clustering, ContingencyMatrix, InvalidInput, validate_clustering
from cluster_pair.io_formats import (
    read_contingency, read_features, read_labels, read_report, write_contingency,
    write_labels, write_report,
)
from cluster_pair.report import BenchReport, MethodResult


def test_read_lines(tmp_path):
    p = tmp_path / "l.txt"
    p.write_text("1\n1\n2\n")
    assert read_labels(p).tolist() == [1, 1, 2]
    p.write_text("a\nb\na\n")
    assert read_labels(p).tolist() == ["a", "b", "a"]


def test_read_csv_column(tmp_path):
    p = tmp_path / "iris.csv"
    p.write_text("sepal,species\n5.1,setosa\n7.0,versicolor\n4.9,setosa\n")
    assert read_labels(p, "csv", "species").tolist() == ["setosa", "versicolor", "setosa"]
    assert read_labels(p, "csv", 1).tolist() == ["setosa", "versicolor", "setosa"]
    with pytest.raises(InvalidInput, match="no column"):
        read_labels(p, "csv", "colour")
    q = tmp_path / "nohdr.csv"
    q.write_text("1,x\n2,y\n")
    assert read_labels(q, "csv", "0", header=False).tolist() == [1, 2]


def test_read_errors_name_line(tmp_path):
    p = tmp_path / "bad.txt"
    p.write_text("1\n\n2\n")
    with pytest.raises(InvalidInput, match=r"bad.txt:2"):
        read_labels(p)
    with pytest.raises(InvalidInput, match="no such file"):
        read_labels(tmp_path / "nope.txt")


def test_write_labels_format(tmp_path):
    p = tmp_path / "o.txt"
    write_labels(Clustering([0, 1], 2), p)
    assert p.read_bytes() == b"0\n1\n"
    with pytest.raises(InvalidInput):
        write_labels(None, p)


@settings(max_examples=30)
@given(st.lists(st.integers(0, 9), min_size=1, max_size=300))
def test_labels_roundtrip(tmp_path_factory, raw):
    p = tmp_path_factory.mktemp("rt") / "l.txt"
    c = Clustering(raw, 10)
    write_labels(c, p)
    back = read_labels(p)
    assert back.tolist() == raw
    assert validate_clustering(back) == validate_clustering(c.labels)


def test_contingency_csv(tmp_path):
    p = tmp_path / "m.csv"
    write_contingency(ContingencyMatrix([[1, 2], [3, 4]]), p)
    assert p.read_text() == "c0,c1\n1,2\n3,4\n"
    big = ContingencyMatrix(np.random.default_rng(0).integers(0, 10**9, (100, 100)))
    write_contingency(big, p)
    assert len(p.read_text().splitlines()) == 101
    assert read_contingency(p) == big


def test_read_features(tmp_path):
    p = tmp_path / "f.csv"
    p.write_text("x,y,label\n0,1.5,a\n2,3,b\n")
    f = read_features(p, ["x", "y"])
    assert f.points.tolist() == [[0.0, 1.5], [2.0, 3.0]]
    with pytest.raises(InvalidInput):
        read_features(p)


def sample_report(**over):
    rec = MethodResult(
        experiment="100k/K=100", dataset_type="both balanced", method="smbp",
        run_time_seconds=0.1 + 0.2, accuracy_mean=0.9823, accuracy_std=1 / 3,
        iterations=50, seed=2**64 - 1, n_rows=100_000, k1=100, k2=100,
        params={"proposer_side": "row"}, **over,
    )
    other = MethodResult(experiment="x", dataset_type="both unbalanced", method="mwm",
                         timed_out=True, time_limit_seconds=1.5, normalized=True,
                         denominator="max(smbp,mmm)")
    return BenchReport(records=[rec, other], backend="numba")


@pytest.mark.parametrize("ext", ["json", "csv"])
def test_report_roundtrip_and_append(tmp_path, ext):
    p = tmp_path / f"r.{ext}"
    r1, r2 = sample_report(), sample_report(error="boom")
    write_report(r1, p)
    write_report(r2, p)
    back = read_report(p)
    assert [b.to_dict() for b in back] == [r1.to_dict(), r2.to_dict()]


def test_json_and_csv_hold_identical_values(tmp_path):
    r = sample_report()
    write_report(r, tmp_path / "a.json")
    write_report(r, tmp_path / "a.csv")
    assert read_report(tmp_path / "a.json")[0].to_dict() == read_report(tmp_path / "a.csv")[0].to_dict()
    doc = json.loads((tmp_path / "a.json").read_text())
    assert doc["schema_version"] == 1 and doc["runs"][0]["records"][0]["method"] == "smbp"
