"""Label files, contingency CSVs, feature CSVs and benchmark reports.

Label files hold one label per line (UTF-8, LF). CSV label columns are
selected by header name or 0-based index. Reports are JSON documents
holding a list of runs, or flat CSV with one row per record; both formats
append on repeated writes.
"""
from __future__ import annotations

import csv
import json
import os
from pathlib import Path
from typing import Iterator, Optional, Union

import numpy as np

from .errors import InvalidInput
from .model import Clustering, ContingencyMatrix, FeatureDataset
from .report import SCHEMA_VERSION, BenchReport, MethodResult

PathLike = Union[str, os.PathLike]
_BATCH = 1 << 20


def _open_text(path: PathLike, mode: str = "r"):
    try:
        return open(path, mode, encoding="utf-8", newline="")
    except FileNotFoundError:
        raise InvalidInput(f"no such file: {path}") from None
    except OSError as exc:
        raise InvalidInput(f"cannot open {path}: {exc.strerror}") from None


def _line_values(path: PathLike) -> Iterator[tuple[int, str]]:
    with _open_text(path) as fh:
        for lineno, line in enumerate(fh, 1):
            value = line.strip()
            if not value:
                raise InvalidInput(f"{path}:{lineno}: empty label")
            yield lineno, value


def _csv_values(path: PathLike, column, header: bool) -> Iterator[tuple[int, str]]:
    with _open_text(path) as fh:
        reader = csv.reader(fh)
        idx = None
        if header:
            names = next(reader, None)
            if names is None:
                raise InvalidInput(f"{path}: empty CSV file")
            names = [n.strip() for n in names]
            if isinstance(column, str) and not column.isdigit():
                if column not in names:
                    raise InvalidInput(f"{path}: no column named {column!r} (have {names})")
                idx = names.index(column)
        if idx is None:
            try:
                idx = int(column)
            except (TypeError, ValueError):
                raise InvalidInput(f"{path}: column {column!r} needs a header row") from None
        for row in reader:
            lineno = reader.line_num
            if not row or (len(row) == 1 and not row[0].strip()):
                continue
            if idx >= len(row):
                raise InvalidInput(f"{path}:{lineno}: missing column {column!r}")
            value = row[idx].strip()
            if not value:
                raise InvalidInput(f"{path}:{lineno}: empty label")
            yield lineno, value


def read_labels(
    path: PathLike,
    fmt: str = "lines",
    column: Union[str, int, None] = None,
    header: bool = True,
) -> np.ndarray:
    """Read raw labels in file order.

    Returns an int64 array when every label parses as an integer, else an
    array of strings. ``fmt`` is ``"lines"`` or ``"csv"``; CSV needs
    ``column`` (header name or 0-based index).
    """
    if fmt == "lines":
        source = _line_values(path)
    elif fmt == "csv":
        if column is None:
            raise InvalidInput("CSV label input needs a column")
        source = _csv_values(path, column, header)
    else:
        raise InvalidInput(f"unknown label format {fmt!r}")

    int_parts: list[np.ndarray] = []
    str_parts: list[list[str]] = []
    numeric = True
    batch: list[str] = []

    def flush():
        nonlocal numeric
        if not batch:
            return
        if numeric:
            try:
                int_parts.append(np.array([int(v) for v in batch], dtype=np.int64))
            except ValueError:
                numeric = False
                str_parts.extend([p.astype(str).tolist() for p in int_parts])
                int_parts.clear()
        if not numeric:
            str_parts.append(list(batch))
        batch.clear()

    for _, value in source:
        batch.append(value)
        if len(batch) >= _BATCH:
            flush()
    flush()
    if numeric:
        if not int_parts:
            raise InvalidInput(f"{path}: no labels")
        return np.concatenate(int_parts)
    values = [v for part in str_parts for v in part]
    if not values:
        raise InvalidInput(f"{path}: no labels")
    return np.array(values)


def write_labels(c: Clustering, path: PathLike) -> None:
    """One 0-based label per line, newline terminated."""
    if c is None or c.n_points == 0:
        raise InvalidInput("refusing to write an empty label file")
    with _open_text(path, "w") as fh:
        labels = c.labels
        for lo in range(0, labels.size, _BATCH):
            chunk = labels[lo:lo + _BATCH].tolist()
            fh.write("\n".join(map(str, chunk)))
            fh.write("\n")


def write_contingency(m: ContingencyMatrix, path: PathLike) -> None:
    with _open_text(path, "w") as fh:
        fh.write(",".join(f"c{j}" for j in range(m.k2)) + "\n")
        for row in m.counts.tolist():
            fh.write(",".join(map(str, row)) + "\n")


def read_contingency(path: PathLike) -> ContingencyMatrix:
    with _open_text(path) as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None:
            raise InvalidInput(f"{path}: empty contingency file")
        rows = []
        for row in reader:
            if not row:
                continue
            if len(row) != len(header):
                raise InvalidInput(f"{path}:{reader.line_num}: expected {len(header)} columns")
            try:
                rows.append([int(v) for v in row])
            except ValueError:
                raise InvalidInput(f"{path}:{reader.line_num}: non-integer count") from None
    counts = np.array(rows, dtype=np.int64).reshape(len(rows), len(header))
    return ContingencyMatrix(counts)


def read_features(
    path: PathLike,
    columns: Optional[list] = None,
    header: bool = True,
) -> FeatureDataset:
    """Numeric CSV to a feature matrix; ``columns`` picks names or indices."""
    with _open_text(path) as fh:
        reader = csv.reader(fh)
        names = [n.strip() for n in next(reader, [])] if header else None
        idx = None
        if columns is not None:
            idx = []
            for col in columns:
                if isinstance(col, str) and not col.isdigit():
                    if not names or col not in names:
                        raise InvalidInput(f"{path}: no feature column {col!r}")
                    idx.append(names.index(col))
                else:
                    idx.append(int(col))
        rows = []
        for row in reader:
            if not row:
                continue
            picked = row if idx is None else [row[i] if i < len(row) else "" for i in idx]
            try:
                rows.append([float(v) for v in picked])
            except ValueError:
                raise InvalidInput(f"{path}:{reader.line_num}: non-numeric feature") from None
    if not rows:
        raise InvalidInput(f"{path}: no feature rows")
    if len({len(r) for r in rows}) != 1:
        raise InvalidInput(f"{path}: feature rows have differing lengths")
    return FeatureDataset(np.array(rows, dtype=np.float64))


# -- reports ----------------------------------------------------------------

_RUN_COLS = ("schema_version", "run_id", "created", "backend")
_REC_COLS = tuple(MethodResult.__dataclass_fields__)
_INT_COLS = {"schema_version", "iterations", "seed", "n_rows", "k1", "k2"}
_FLOAT_COLS = {"run_time_seconds", "accuracy_mean", "accuracy_std", "time_limit_seconds"}
_BOOL_COLS = {"normalized", "timed_out"}


def _report_format(path: PathLike, fmt: Optional[str]) -> str:
    if fmt is None:
        fmt = "csv" if str(path).lower().endswith(".csv") else "json"
    if fmt not in ("json", "csv"):
        raise InvalidInput(f"unknown report format {fmt!r}")
    return fmt


def write_report(report: BenchReport, path: PathLike, fmt: Optional[str] = None) -> None:
    """Append ``report`` as a new run to a JSON or CSV report file."""
    fmt = _report_format(path, fmt)
    path = Path(path)
    if fmt == "json":
        doc = {"schema_version": SCHEMA_VERSION, "runs": []}
        if path.exists() and path.stat().st_size:
            with open(path, encoding="utf-8") as fh:
                try:
                    doc = json.load(fh)
                except json.JSONDecodeError:
                    raise InvalidInput(f"{path}: existing report is not valid JSON") from None
        doc.setdefault("runs", []).append(report.to_dict())
        tmp = path.with_name(path.name + ".tmp")
        with open(tmp, "w", encoding="utf-8", newline="\n") as fh:
            json.dump(doc, fh, indent=2)
            fh.write("\n")
        os.replace(tmp, path)
        return
    new_file = not path.exists() or path.stat().st_size == 0
    with open(path, "a", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        if new_file:
            writer.writerow(_RUN_COLS + _REC_COLS)
        run = (report.schema_version, report.run_id, report.created, report.backend)
        for rec in report.records:
            d = rec.to_dict()
            cells = []
            for col in _REC_COLS:
                v = d[col]
                if col == "params":
                    cells.append(json.dumps(v, sort_keys=True))
                elif v is None:
                    cells.append("")
                elif isinstance(v, float):
                    cells.append(repr(v))
                else:
                    cells.append(str(v))
            writer.writerow(list(run) + cells)


def _parse_cell(col: str, raw: str):
    if col == "params":
        return json.loads(raw) if raw else {}
    if raw == "":
        return None
    if col in _INT_COLS:
        return int(raw)
    if col in _FLOAT_COLS:
        return float(raw)
    if col in _BOOL_COLS:
        return raw == "True"
    return raw


def read_report(path: PathLike, fmt: Optional[str] = None) -> list[BenchReport]:
    """Every run stored in a report file, in write order."""
    fmt = _report_format(path, fmt)
    if fmt == "json":
        with _open_text(path) as fh:
            doc = json.load(fh)
        return [BenchReport.from_dict(r) for r in doc.get("runs", [])]
    runs: dict[str, BenchReport] = {}
    with _open_text(path) as fh:
        for row in csv.DictReader(fh):
            run_id = row["run_id"]
            if run_id not in runs:
                runs[run_id] = BenchReport(
                    records=[], run_id=run_id, created=row["created"],
                    backend=row["backend"], schema_version=int(row["schema_version"]),
                )
            rec = {col: _parse_cell(col, row[col]) for col in _REC_COLS}
            for col in ("experiment", "dataset_type", "method", "timing_scope"):
                rec[col] = rec[col] or ""
            runs[run_id].records.append(MethodResult.from_dict(rec))
    return list(runs.values())
