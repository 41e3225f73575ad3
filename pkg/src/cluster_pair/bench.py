"""Experiment harness: repeated trials of the matchers on generated or
user-supplied clusterings, reported as run time and accuracy statistics.

Accuracy is measured against the exact MWM pairing when ``mwm`` is among
the methods and finishes; otherwise each method is scored against the
best weight any completed method reached in that iteration (normalized
accuracy).
"""
from __future__ import annotations

import logging
import multiprocessing as mp
import time
from dataclasses import dataclass, replace
from typing import Callable, Optional, Union

import numpy as np

from . import kernels
from .contingency import build_contingency
from .datagen import GenConfig, generate
from .errors import InvalidInput
from .io_formats import read_features, read_labels
from .matchers import cr_pair, mmm_pair, mwm_pair, smbp_pair
from .metrics import summarize
from .model import Clustering, ContingencyMatrix, FeatureDataset, validate_clustering
from .report import BenchReport, MethodResult
from .rng import DEFAULT_SEED, derive_seed

log = logging.getLogger(__name__)

METHODS = ("mwm", "smbp", "mmm", "cr")
TIMING_SCOPES = ("pairing-only", "pairing-plus-contingency")
# extra wall time granted to a forked worker for start-up before it is killed
_WORKER_GRACE = 1.0

_WARMUP_MATRIX = ContingencyMatrix(np.array([[3, 1, 0], [2, 5, 1], [0, 1, 4]]))


@dataclass(frozen=True)
class GeneratorSource:
    mode: str
    n_communities: int
    n_rows: Optional[int] = None


@dataclass(frozen=True)
class LabelsSource:
    path: str
    fmt: str = "lines"
    column: Union[str, int, None] = None
    header: bool = True
    k: Optional[int] = None


Source = Union[GeneratorSource, LabelsSource]


@dataclass(frozen=True)
class ExperimentSpec:
    name: str
    first: Source
    second: GeneratorSource
    methods: tuple = ("mwm", "smbp", "mmm")
    iterations: int = 1
    base_seed: int = DEFAULT_SEED
    timing_scope: str = "pairing-only"
    time_limit_seconds: Optional[float] = None
    proposer_side: str = "row"
    features: Optional[str] = None
    feature_columns: Optional[tuple] = None
    warmup: int = 1

    def __post_init__(self):
        if self.iterations < 1:
            raise InvalidInput("iterations must be >= 1")
        if not self.methods:
            raise InvalidInput("at least one method is required")
        bad = [m for m in self.methods if m not in METHODS]
        if bad:
            raise InvalidInput(f"unknown methods {bad}; choose from {list(METHODS)}")
        if len(set(self.methods)) != len(self.methods):
            raise InvalidInput("methods must not repeat")
        if "cr" in self.methods and not self.features:
            raise InvalidInput("centroid ratio (cr) needs a feature file")
        if self.timing_scope not in TIMING_SCOPES:
            raise InvalidInput(f"timing_scope must be one of {TIMING_SCOPES}")
        if self.time_limit_seconds is not None and self.time_limit_seconds <= 0:
            raise InvalidInput("time limit must be positive")
        if isinstance(self.first, GeneratorSource) and not self.first.n_rows:
            raise InvalidInput("a generated first clustering needs n_rows")

    @property
    def dataset_type(self) -> str:
        if isinstance(self.first, LabelsSource):
            return f"labels vs {self.second.mode}"
        modes = sorted((self.first.mode, self.second.mode))
        if modes[0] == modes[1]:
            return f"both {modes[0]}"
        return "one balanced, one unbalanced"

    @classmethod
    def from_dict(cls, d: dict) -> "ExperimentSpec":
        d = dict(d)

        def source(s):
            s = dict(s)
            kind = s.pop("kind", "generator")
            if kind == "generator":
                return GeneratorSource(**s)
            if kind == "labels":
                if "format" in s:
                    s["fmt"] = s.pop("format")
                return LabelsSource(**s)
            raise InvalidInput(f"unknown source kind {kind!r}")

        try:
            d["first"] = source(d["first"])
            d["second"] = source(d["second"])
        except (KeyError, TypeError) as exc:
            raise InvalidInput(f"bad experiment source: {exc}") from None
        if not isinstance(d["second"], GeneratorSource):
            raise InvalidInput("the second clustering must come from a generator")
        for key in ("methods", "feature_columns"):
            if d.get(key) is not None:
                d[key] = tuple(d[key])
        try:
            return cls(**d)
        except TypeError as exc:
            raise InvalidInput(f"bad experiment spec: {exc}") from None


def time_op(thunk: Callable[[], object], warmup: int = 1) -> tuple[object, float]:
    """Run ``thunk`` ``warmup`` times untimed, then once under a monotonic clock."""
    for _ in range(warmup):
        thunk()
    t0 = time.perf_counter()
    result = thunk()
    return result, time.perf_counter() - t0


def _worker(fn, m, conn):
    try:
        t0 = time.perf_counter()
        p = fn(m)
        dt = time.perf_counter() - t0
        conn.send(("ok", p, dt))
    except BaseException as exc:  # report anything back to the parent
        conn.send(("error", repr(exc), 0.0))
    finally:
        conn.close()


def _run_limited(fn, m, limit: float):
    """Run ``fn(m)`` in a forked worker; None when it exceeds ``limit`` seconds."""
    try:
        ctx = mp.get_context("fork")
    except ValueError:
        p, dt = time_op(lambda: fn(m), warmup=0)
        return None if dt > limit else (p, dt)
    parent, child = ctx.Pipe(duplex=False)
    proc = ctx.Process(target=_worker, args=(fn, m, child), daemon=True)
    proc.start()
    child.close()
    try:
        if not parent.poll(limit + _WORKER_GRACE):
            return None
        status, payload, dt = parent.recv()
    except EOFError:
        raise RuntimeError("pairing worker died without a result") from None
    finally:
        if proc.is_alive():
            proc.kill()
        proc.join()
        parent.close()
    if status != "ok":
        raise RuntimeError(f"pairing worker failed: {payload}")
    if dt > limit:
        return None
    return payload, dt


def _load_first(spec: ExperimentSpec) -> Optional[Clustering]:
    if isinstance(spec.first, LabelsSource):
        src = spec.first
        raw = read_labels(src.path, src.fmt, src.column, src.header)
        return validate_clustering(raw, src.k)
    return None


def run_experiment(spec: ExperimentSpec, threads: Optional[int] = None) -> BenchReport:
    """Run every iteration of ``spec`` and aggregate per-method statistics."""
    fixed_first = _load_first(spec)
    n_rows = fixed_first.n_points if fixed_first is not None else spec.first.n_rows
    if spec.second.n_rows is not None and spec.second.n_rows != n_rows:
        raise InvalidInput("both clusterings must cover the same number of rows")
    features: Optional[FeatureDataset] = None
    if "cr" in spec.methods:
        features = read_features(spec.features, spec.feature_columns)
        if features.n_points != n_rows:
            raise InvalidInput(f"feature file has {features.n_points} rows, labels have {n_rows}")

    side = spec.proposer_side
    matchers: dict[str, Callable] = {
        "mwm": mwm_pair,
        "smbp": lambda m: smbp_pair(m, side),
        "mmm": mmm_pair,
    }
    # JIT warm-up on a tiny matrix, kept out of every timing
    for name in spec.methods:
        if name in matchers:
            for _ in range(spec.warmup):
                matchers[name](_WARMUP_MATRIX)

    weights: dict[str, list] = {name: [] for name in spec.methods}
    times: dict[str, list] = {name: [] for name in spec.methods}
    timed_out: set[str] = set()
    k1 = k2 = 0

    for t in range(spec.iterations):
        if fixed_first is not None:
            a = fixed_first
        else:
            a = generate(GenConfig(spec.first.n_communities, n_rows,
                                   derive_seed(spec.base_seed, t, 0), spec.first.mode))
        b = generate(GenConfig(spec.second.n_communities, n_rows,
                               derive_seed(spec.base_seed, t, 1), spec.second.mode))
        m, t_cont = time_op(lambda: build_contingency(a, b, threads), warmup=0)
        k1, k2 = m.k1, m.k2
        extra = t_cont if spec.timing_scope == "pairing-plus-contingency" else 0.0

        for name in spec.methods:
            if name in timed_out:
                weights[name].append(None)
                continue
            if name == "cr":
                fn = lambda _m, a=a, b=b: cr_pair(features, a, b)
            else:
                fn = matchers[name]
            if spec.time_limit_seconds is None:
                pairing, dt = time_op(lambda: fn(m), warmup=0)
            else:
                out = _run_limited(fn, m, spec.time_limit_seconds)
                if out is None:
                    log.info("%s: %s exceeded %.3g s", spec.name, name, spec.time_limit_seconds)
                    timed_out.add(name)
                    weights[name].append(None)
                    continue
                pairing, dt = out
            weights[name].append(pairing.weight)
            times[name].append(dt + extra)

    return _aggregate(spec, weights, times, timed_out, n_rows, k1, k2)


def _aggregate(spec, weights, times, timed_out, n_rows, k1, k2) -> BenchReport:
    use_mwm = "mwm" in spec.methods and "mwm" not in timed_out
    others = [name for name in spec.methods if name != "mwm"]
    denominator = "mwm" if use_mwm else "max(" + ",".join(others or ["mwm"]) + ")"
    report = BenchReport(backend=kernels.BACKEND_NAME)
    for name in spec.methods:
        rec = MethodResult(
            experiment=spec.name,
            dataset_type=spec.dataset_type,
            method=name,
            normalized=not use_mwm,
            denominator=denominator,
            seed=int(spec.base_seed),
            n_rows=int(n_rows),
            k1=int(k1),
            k2=int(k2),
            timing_scope=spec.timing_scope,
            time_limit_seconds=spec.time_limit_seconds,
            params={"proposer_side": spec.proposer_side} if name == "smbp" else {},
        )
        if name in timed_out:
            rec.timed_out = True
            rec.iterations = len(times[name])
            report.records.append(rec)
            continue
        accs = []
        for t, w in enumerate(weights[name]):
            if use_mwm:
                ref = weights["mwm"][t]
            else:
                done = [weights[o][t] for o in spec.methods if weights[o][t] is not None]
                ref = max(done)
            if ref == 0:
                accs.append(1.0)
            else:
                if w > ref:
                    raise AssertionError(f"{name} weight {w} exceeds reference {ref}")
                accs.append(w / ref)
        rec.accuracy_mean, rec.accuracy_std = summarize(accs)
        rec.run_time_seconds = float(np.mean(times[name]))
        rec.iterations = len(accs)
        report.records.append(rec)
    return report


def run_suite(specs, threads: Optional[int] = None) -> BenchReport:
    """Run several experiments into one report; failures become error records."""
    merged = BenchReport(backend=kernels.BACKEND_NAME)
    for spec in specs:
        try:
            part = run_experiment(spec, threads)
        except Exception as exc:  # keep going, record the failure
            log.exception("experiment %s failed", spec.name)
            for name in spec.methods:
                merged.records.append(MethodResult(
                    experiment=spec.name, dataset_type=spec.dataset_type, method=name,
                    seed=int(spec.base_seed), timing_scope=spec.timing_scope,
                    time_limit_seconds=spec.time_limit_seconds, error=str(exc) or repr(exc),
                ))
            continue
        merged.records.extend(part.records)
    return merged


CONDITIONS = (
    ("balanced", "balanced"),
    ("unbalanced", "balanced"),
    ("unbalanced", "unbalanced"),
)

# (rows, communities, iterations, methods, time limit)
_SCALES = {
    "small": [(1_000, 10, 5, ("mwm", "smbp", "mmm"), None)],
    "medium": [(100_000, 100, 50, ("mwm", "smbp", "mmm"), None)],
    "paper": [
        (100_000, 100, 50, ("mwm", "smbp", "mmm"), None),
        (10_000_000, 500, 1, ("mwm", "smbp", "mmm"), None),
        (20_000_000, 1_000, 1, ("mwm", "smbp", "mmm"), None),
        (40_000_000, 2_000, 1, ("smbp", "mmm"), 7200.0),
        (200_000_000, 5_000, 1, ("smbp", "mmm"), 7200.0),
        (400_000_000, 10_000, 1, ("smbp", "mmm"), 7200.0),
    ],
}


def _rows_label(n: int) -> str:
    for div, suffix in ((1_000_000, "M"), (1_000, "k")):
        if n >= div and n % div == 0:
            return f"{n // div}{suffix}"
    return str(n)


def paper_suite(scale: str = "medium", base_seed: int = DEFAULT_SEED) -> list[ExperimentSpec]:
    """Canned grid of the synthetic experiments: three dataset conditions per size.

    ``small`` is the ``medium`` grid with rows divided by 100, communities
    by 10 and 5 iterations, for CI. ``paper`` adds the 10M/500 and 20M/1000
    single-iteration runs and the SMBP-vs-MMM runs at 40M/2000, 200M/5000
    and 400M/10000 with a two-hour limit.
    """
    if scale not in _SCALES:
        raise InvalidInput(f"unknown suite scale {scale!r}; choose from {sorted(_SCALES)}")
    specs = []
    for rows, k, iters, methods, limit in _SCALES[scale]:
        for first, second in CONDITIONS:
            specs.append(ExperimentSpec(
                name=f"{_rows_label(rows)}/K={k}",
                first=GeneratorSource(first, k, rows),
                second=GeneratorSource(second, k, rows),
                methods=methods,
                iterations=iters,
                base_seed=base_seed,
                time_limit_seconds=limit,
            ))
    return specs


def with_overrides(spec: ExperimentSpec, **changes) -> ExperimentSpec:
    changes = {k: v for k, v in changes.items() if v is not None}
    return replace(spec, **changes) if changes else spec
