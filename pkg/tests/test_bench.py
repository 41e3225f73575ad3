import time

import numpy as np
import pytest

from cluster_pair import (
    Clustering, GenConfig, InvalidInput, build_contingency, generate, mmm_pair, mwm_pair, smbp_pair,
)
from cluster_pair.bench import (
    ExperimentSpec, GeneratorSource, LabelsSource, paper_suite, run_experiment, run_suite,
    time_op, with_overrides,
)
from cluster_pair.io_formats import write_labels
from cluster_pair.rng import derive_seed


def spec(**kw):
    base = dict(
        name="1k/K=10",
        first=GeneratorSource("balanced", 10, 1000),
        second=GeneratorSource("balanced", 10),
        iterations=5,
        base_seed=123,
    )
    base.update(kw)
    return ExperimentSpec(**base)


def test_time_op():
    _, dt = time_op(lambda: None)
    assert dt >= 0
    _, dt = time_op(lambda: time.sleep(0.01), warmup=0)
    assert 0.009 <= dt < 0.2


def test_small_run_dominance():
    rep = run_experiment(spec())
    assert {r.method for r in rep.records} == {"mwm", "smbp", "mmm"}
    for r in rep.records:
        assert 0.0 <= r.accuracy_mean <= 1.0
        assert r.iterations == 5 and not r.timed_out and not r.normalized
    assert rep.get("mwm").accuracy_mean == 1.0 and rep.get("mwm").accuracy_std == 0.0


def test_mwm_only():
    rep = run_experiment(spec(methods=("mwm",)))
    assert (rep.get("mwm").accuracy_mean, rep.get("mwm").accuracy_std) == (1.0, 0.0)


def test_normalized_when_mwm_absent():
    rep = run_experiment(spec(methods=("smbp", "mmm")))
    for r in rep.records:
        assert r.normalized and r.denominator == "max(smbp,mmm)"
    # every iteration has a 1.0 for at least one method
    assert max(rep.get("smbp").accuracy_mean, rep.get("mmm").accuracy_mean) <= 1.0


def test_reproducible_accuracy_fields():
    a, b = run_experiment(spec()), run_experiment(spec())
    assert a.accuracy_fields() == b.accuracy_fields()
    c = run_experiment(spec(base_seed=124))
    assert c.accuracy_fields() != a.accuracy_fields()


def test_timing_scope_recorded():
    rep = run_experiment(spec(timing_scope="pairing-plus-contingency", iterations=1))
    assert all(r.timing_scope == "pairing-plus-contingency" for r in rep.records)


def test_spec_validation():
    with pytest.raises(InvalidInput):
        spec(iterations=0)
    with pytest.raises(InvalidInput):
        spec(methods=())
    with pytest.raises(InvalidInput):
        spec(methods=("cr",))
    with pytest.raises(InvalidInput):
        spec(methods=("bogus",))
    with pytest.raises(InvalidInput):
        spec(timing_scope="everything")


def test_labels_source_and_cr(tmp_path):
    rng = np.random.default_rng(0)
    labels = rng.integers(0, 4, 400)
    write_labels(Clustering(labels, 4), tmp_path / "truth.txt")
    feats = tmp_path / "f.csv"
    pts = rng.normal(size=(400, 2)) + labels[:, None] * 3.0
    feats.write_text("x,y\n" + "\n".join(f"{x},{y}" for x, y in pts) + "\n")
    s = spec(first=LabelsSource(str(tmp_path / "truth.txt")),
             second=GeneratorSource("balanced", 4),
             methods=("mwm", "smbp", "mmm", "cr"), features=str(feats), iterations=3)
    rep = run_experiment(s)
    assert rep.get("cr").accuracy_mean <= 1.0
    assert rep.records[0].dataset_type == "labels vs balanced"


def _cost(fn, m):
    fn(m)
    t0 = time.perf_counter()
    fn(m)
    return time.perf_counter() - t0


def test_timeout_marks_only_slow_method():
    k, rows = 1000, 1_000_000
    a = generate(GenConfig(k, rows, derive_seed(1, 0, 0), "unbalanced"))
    b = generate(GenConfig(k, rows, derive_seed(1, 0, 1), "unbalanced"))
    m = build_contingency(a, b)
    slow, fast = _cost(mwm_pair, m), max(_cost(smbp_pair, m), _cost(mmm_pair, m))
    if slow < 4 * fast:
        pytest.skip("MWM is not clearly slower than SMBP/MMM on this backend")
    s = spec(first=GeneratorSource("unbalanced", k, rows), second=GeneratorSource("unbalanced", k),
             iterations=1, time_limit_seconds=(slow * fast) ** 0.5, base_seed=1)
    rep = run_experiment(s)
    mwm = rep.get("mwm")
    assert mwm.timed_out and mwm.accuracy_mean is None
    for name in ("smbp", "mmm"):
        r = rep.get(name)
        assert not r.timed_out and r.normalized and r.accuracy_mean is not None


def test_run_suite_records_errors(tmp_path):
    bad = spec(first=LabelsSource(str(tmp_path / "missing.txt")), second=GeneratorSource("balanced", 3))
    rep = run_suite([bad, spec(iterations=1)])
    assert rep.failed
    assert any(r.error and "missing.txt" in r.error for r in rep.records)
    assert any(r.error is None for r in rep.records)


def test_paper_suite_grid():
    med = paper_suite("medium")
    assert len(med) == 3
    assert {(s.first.n_rows, s.first.n_communities, s.iterations) for s in med} == {(100_000, 100, 50)}
    assert [s.dataset_type for s in med] == [
        "both balanced", "one balanced, one unbalanced", "both unbalanced"]
    big = paper_suite("paper")
    assert sum(1 for s in big if (s.first.n_rows, s.first.n_communities) == (20_000_000, 1000)) == 3
    assert all("mwm" not in s.methods for s in big if s.first.n_communities >= 2000)
    small = paper_suite("small")
    assert all(s.first.n_rows == 1000 and s.first.n_communities == 10 for s in small)
    with pytest.raises(InvalidInput):
        paper_suite("huge")


def test_from_dict_and_overrides():
    s = ExperimentSpec.from_dict({
        "name": "x", "first": {"kind": "generator", "mode": "balanced", "n_communities": 3, "n_rows": 30},
        "second": {"mode": "unbalanced", "n_communities": 4}, "methods": ["smbp"],
    })
    assert s.methods == ("smbp",) and s.dataset_type == "one balanced, one unbalanced"
    assert with_overrides(s, iterations=None) is s
    assert with_overrides(s, iterations=4).iterations == 4
    with pytest.raises(InvalidInput):
        ExperimentSpec.from_dict({"name": "x", "first": {"kind": "url"}, "second": {}})
