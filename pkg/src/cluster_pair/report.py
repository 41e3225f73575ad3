"""Benchmark report records.

One :class:`MethodResult` per (experiment, method); a :class:`BenchReport`
groups the records of a single harness invocation under a run id.
"""
from __future__ import annotations

import datetime as _dt
import uuid
from dataclasses import asdict, dataclass, field, fields
from typing import Optional

SCHEMA_VERSION = 1

METHOD_NAMES = {
    "mwm": "Maximum Weighted Matching",
    "smbp": "Stable Matching Based Pairing",
    "mmm": "Maximum Match Measure",
    "cr": "Centroid Ratio",
}


@dataclass
class MethodResult:
    experiment: str
    dataset_type: str
    method: str
    run_time_seconds: Optional[float] = None
    accuracy_mean: Optional[float] = None
    accuracy_std: Optional[float] = None
    normalized: bool = False
    denominator: Optional[str] = None
    timed_out: bool = False
    iterations: int = 0
    seed: int = 0
    n_rows: int = 0
    k1: int = 0
    k2: int = 0
    timing_scope: str = "pairing-only"
    time_limit_seconds: Optional[float] = None
    params: dict = field(default_factory=dict)
    error: Optional[str] = None

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "MethodResult":
        known = {f.name for f in fields(cls)}
        return cls(**{k: v for k, v in d.items() if k in known})


@dataclass
class BenchReport:
    records: list = field(default_factory=list)
    run_id: str = field(default_factory=lambda: uuid.uuid4().hex)
    created: str = field(
        default_factory=lambda: _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds")
    )
    backend: str = ""
    schema_version: int = SCHEMA_VERSION

    def get(self, method: str, experiment: Optional[str] = None) -> MethodResult:
        for rec in self.records:
            if rec.method == method and (experiment is None or rec.experiment == experiment):
                return rec
        raise KeyError((method, experiment))

    @property
    def failed(self) -> bool:
        return any(r.error for r in self.records)

    def accuracy_fields(self) -> list[tuple]:
        """Everything except timings, for reproducibility checks."""
        return [
            (r.experiment, r.method, r.accuracy_mean, r.accuracy_std, r.normalized,
             r.timed_out, r.iterations)
            for r in self.records
        ]

    def to_dict(self) -> dict:
        return {
            "schema_version": self.schema_version,
            "run_id": self.run_id,
            "created": self.created,
            "backend": self.backend,
            "records": [r.to_dict() for r in self.records],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "BenchReport":
        return cls(
            records=[MethodResult.from_dict(r) for r in d.get("records", [])],
            run_id=d["run_id"],
            created=d["created"],
            backend=d.get("backend", ""),
            schema_version=d.get("schema_version", SCHEMA_VERSION),
        )


def _fmt_time(t: Optional[float]) -> str:
    return "-" if t is None else f"{t:.6f}"


def format_table(report: BenchReport) -> str:
    """Plain-text table: dataset type, model, run time, accuracy±std."""
    header = ("Datasets Types", "Model", "Run Time in Seconds", "Accuracy±Std")
    rows = []
    for r in report.records:
        name = METHOD_NAMES.get(r.method, r.method)
        if r.error:
            acc = f"error: {r.error}"
            rt = "-"
        elif r.timed_out:
            acc = "-"
            rt = f"Did not finish within {r.time_limit_seconds:g} s"
        else:
            rt = _fmt_time(r.run_time_seconds)
            acc = "-" if r.accuracy_mean is None else f"{r.accuracy_mean:.4f}±{r.accuracy_std:.5f}"
            if r.normalized and r.accuracy_mean is not None:
                acc += " (normalized)"
        rows.append((f"{r.experiment}: {r.dataset_type}", name, rt, acc))
    widths = [max(len(str(x)) for x in col) for col in zip(header, *rows)]
    line = "+".join("-" * (w + 2) for w in widths)
    out = [line, " | ".join(h.ljust(w) for h, w in zip(header, widths)), line]
    prev = None
    for row in rows:
        if prev is not None and row[0] != prev:
            out.append(line)
        cells = [row[0] if row[0] != prev else ""] + list(row[1:])
        out.append(" | ".join(str(c).ljust(w) for c, w in zip(cells, widths)))
        prev = row[0]
    out.append(line)
    return "\n".join(out)
