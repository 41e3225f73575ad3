import json
import subprocess
import sys

import pytest

from cluster_pair.cli import main


def run(*args):
    return subprocess.run([sys.executable, "-m", "cluster_pair", *map(str, args)],
                          capture_output=True, text=True)


def test_gen_small(tmp_path):
    out = tmp_path / "g.txt"
    assert main(["gen", "--mode", "balanced", "--communities", "3", "--rows", "9",
                 "--seed", "1", "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert len(lines) == 9 and set(lines) <= {"0", "1", "2"}


def test_gen_deterministic_bytes(tmp_path):
    args = ["gen", "--mode", "unbalanced", "--communities", "50", "--rows", "5000"]
    main(args + ["--out", str(tmp_path / "a")])
    main(args + ["--out", str(tmp_path / "b")])
    assert (tmp_path / "a").read_bytes() == (tmp_path / "b").read_bytes()


def test_gen_entropy_prints_seed(tmp_path, capsys):
    assert main(["gen", "--communities", "2", "--rows", "4", "--seed-from-entropy",
                 "--out", str(tmp_path / "e")]) == 0
    assert "seed:" in capsys.readouterr().out


def test_gen_prints_stats(tmp_path, capsys):
    main(["gen", "--mode", "unbalanced", "--communities", "100", "--rows", "100000",
          "--out", str(tmp_path / "u")])
    out = capsys.readouterr().out
    std = float(out.split("std=")[1].split()[0])
    assert 499 * 0.85 <= std <= 499 * 1.15


@pytest.mark.parametrize("method", ["smbp", "mwm", "mmm"])
def test_pair_identical_files(tmp_path, capsys, method):
    f = tmp_path / "a.txt"
    main(["gen", "--communities", "5", "--rows", "200", "--out", str(f)])
    capsys.readouterr()
    assert main(["pair", "--a", str(f), "--b", str(f), "--method", method, "--with-mwm"]) == 0
    out = capsys.readouterr().out
    assert "accuracy: 1.000000" in out and "weight: 200" in out


def test_pair_cr_and_report(tmp_path, capsys):
    a = tmp_path / "a.txt"
    a.write_text("0\n0\n1\n1\n")
    b = tmp_path / "b.txt"
    b.write_text("1\n1\n0\n0\n")
    feats = tmp_path / "f.csv"
    feats.write_text("x\n0\n0\n10\n10\n")
    rep = tmp_path / "r.json"
    assert main(["pair", "--a", str(a), "--b", str(b), "--method", "cr", "--features", str(feats),
                 "--with-mwm", "--show-pairs", "--report", str(rep)]) == 0
    assert "accuracy: 1.000000" in capsys.readouterr().out
    rec = json.loads(rep.read_text())["runs"][0]["records"][0]
    assert rec["method"] == "cr" and rec["accuracy_mean"] == 1.0


def test_pair_missing_file_names_path(tmp_path):
    missing = tmp_path / "absent_labels.txt"
    res = run("pair", "--a", missing, "--b", missing)
    assert res.returncode != 0
    assert str(missing) in res.stderr


def test_contingency_example(tmp_path):
    a = tmp_path / "a.txt"
    a.write_text("0\n0\n1\n1\n2\n")
    b = tmp_path / "b.txt"
    b.write_text("0\n1\n1\n0\n2\n")
    out = tmp_path / "m.csv"
    assert main(["contingency", "--a", str(a), "--b", str(b), "--out", str(out)]) == 0
    assert out.read_text() == "c0,c1,c2\n1,1,0\n1,1,0\n0,0,1\n"
    assert main(["contingency", "--a", str(a), "--b", str(a), "--out", str(out)]) == 0
    assert out.read_text() == "c0,c1,c2\n2,0,0\n0,2,0\n0,0,1\n"


def test_contingency_length_mismatch(tmp_path):
    a = tmp_path / "a.txt"
    a.write_text("0\n" * 5)
    b = tmp_path / "b.txt"
    b.write_text("0\n" * 6)
    assert main(["contingency", "--a", str(a), "--b", str(b), "--out", str(tmp_path / "m")]) != 0


def test_bench_small_suite(tmp_path):
    rep = tmp_path / "r.csv"
    res = run("bench", "--suite", "small", "--out", rep)
    assert res.returncode == 0, res.stderr
    assert "Accuracy±Std" in res.stdout and "Stable Matching Based Pairing" in res.stdout
    rows = rep.read_text().splitlines()
    assert len(rows) == 1 + 3 * 3


def test_bench_spec_failure_exit_code(tmp_path):
    spec = tmp_path / "s.json"
    spec.write_text(json.dumps({"experiments": [{
        "name": "bad", "first": {"kind": "labels", "path": str(tmp_path / "gone.txt")},
        "second": {"mode": "balanced", "n_communities": 3}, "methods": ["smbp"],
    }]}))
    res = run("bench", "--spec", spec)
    assert res.returncode != 0
    assert "error" in res.stdout


def test_bench_threads_env(tmp_path, monkeypatch):
    monkeypatch.setenv("CLUSTER_PAIR_THREADS", "2")
    assert main(["bench", "--suite", "small", "--iterations", "1"]) == 0
