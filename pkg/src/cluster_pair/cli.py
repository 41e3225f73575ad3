"""Command line front end: ``cluster-pair {gen,pair,bench,contingency}``."""
from __future__ import annotations

import argparse
import json
import logging
import secrets
import sys
from typing import Optional, Sequence

from . import __version__, kernels
from .bench import ExperimentSpec, paper_suite, run_suite, with_overrides
from .contingency import build_contingency, default_threads
from .datagen import GenConfig, cluster_size_stats, generate
from .errors import InvalidInput
from .io_formats import read_features, read_labels, write_contingency, write_labels, write_report
from .matchers import cr_pair, mmm_pair, mwm_pair, smbp_pair
from .metrics import accuracy
from .model import FeatureDataset, validate_clustering
from .report import BenchReport, MethodResult, format_table
from .rng import DEFAULT_SEED

def _seed(args) -> int:
    if getattr(args, "seed_from_entropy", False):
        seed = secrets.randbits(64)
        print(f"seed: {seed}")
        return seed
    return args.seed


def _labels(path, args, k=None):
    raw = read_labels(path, args.format, args.column, not args.no_header)
    return validate_clustering(raw, k)


def cmd_gen(args) -> int:
    cfg = GenConfig(args.communities, args.rows, _seed(args), args.mode)
    c = generate(cfg)
    write_labels(c, args.out)
    mean, std = cluster_size_stats(c)
    print(f"wrote {c.n_points} labels ({args.mode}, K={c.k}) to {args.out}")
    print(f"cluster size: mean={mean:.3f} std={std:.3f}")
    return 0


def _pair_inputs(args):
    a = _labels(args.a, args, args.k_a)
    b = _labels(args.b, args, args.k_b)
    if a.n_points != b.n_points:
        raise InvalidInput(f"{args.a} has {a.n_points} labels but {args.b} has {b.n_points}")
    return a, b


def cmd_pair(args) -> int:
    a, b = _pair_inputs(args)
    m = build_contingency(a, b, args.threads)
    if args.method == "cr":
        if not args.features:
            raise InvalidInput("--method cr needs --features")
        feats: FeatureDataset = read_features(args.features)
        pairing = cr_pair(feats, a, b)
    elif args.method == "smbp":
        pairing = smbp_pair(m, args.proposer)
    elif args.method == "mmm":
        pairing = mmm_pair(m)
    else:
        pairing = mwm_pair(m)
    print(f"method: {args.method}")
    print(f"pairs: {len(pairing)}")
    print(f"weight: {pairing.weight}")
    if pairing.excluded_rows or pairing.excluded_cols:
        print(f"excluded empty clusters: a={list(pairing.excluded_rows)} b={list(pairing.excluded_cols)}")
    acc = None
    if args.with_mwm:
        acc = accuracy(pairing, mwm_pair(m))
        print(f"accuracy: {acc:.6f}")
    if args.show_pairs:
        for r, c, w in pairing.pairs:
            print(f"{r}\t{c}\t{w}")
    if args.report:
        rec = MethodResult(
            experiment="pair",
            dataset_type=f"{args.a} vs {args.b}",
            method=args.method,
            accuracy_mean=acc,
            accuracy_std=0.0 if acc is not None else None,
            denominator="mwm" if acc is not None else None,
            iterations=1,
            n_rows=a.n_points,
            k1=m.k1,
            k2=m.k2,
            params={"proposer_side": args.proposer, "weight": pairing.weight, "pairs": len(pairing)},
        )
        write_report(BenchReport(records=[rec], backend=kernels.BACKEND_NAME), args.report,
                     args.report_format)
    return 0


def cmd_contingency(args) -> int:
    a, b = _pair_inputs(args)
    m = build_contingency(a, b, args.threads)
    write_contingency(m, args.out)
    print(f"wrote {m.k1}x{m.k2} contingency matrix (total {m.total}) to {args.out}")
    return 0


def _load_specs(path) -> list:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except FileNotFoundError:
        raise InvalidInput(f"no such file: {path}") from None
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"{path}: invalid JSON ({exc})") from None
    items = doc.get("experiments", []) if isinstance(doc, dict) else doc
    if not items:
        raise InvalidInput(f"{path}: no experiments")
    return [ExperimentSpec.from_dict(d) for d in items]


def cmd_bench(args) -> int:
    if args.spec:
        specs = _load_specs(args.spec)
    else:
        specs = paper_suite(args.suite, _seed(args))
    specs = [
        with_overrides(
            s,
            time_limit_seconds=args.time_limit,
            iterations=args.iterations,
            timing_scope=args.timing_scope,
            proposer_side=args.proposer,
        )
        for s in specs
    ]
    report = run_suite(specs, args.threads)
    print(format_table(report))
    if args.out:
        write_report(report, args.out, args.report_format)
        print(f"report appended to {args.out}")
    if report.failed:
        print("one or more experiments failed", file=sys.stderr)
        return 1
    return 0


def _add_label_flags(p):
    p.add_argument("--a", required=True, help="first label file")
    p.add_argument("--b", required=True, help="second label file")
    p.add_argument("--format", choices=("lines", "csv"), default="lines")
    p.add_argument("--column", help="CSV label column (name or 0-based index)")
    p.add_argument("--no-header", action="store_true", help="CSV input has no header row")
    p.add_argument("--k-a", type=int, help="declare K for --a (allows empty clusters)")
    p.add_argument("--k-b", type=int, help="declare K for --b (allows empty clusters)")
    p.add_argument("--threads", type=int, default=None,
                   help="contingency threads (default: $CLUSTER_PAIR_THREADS or 1)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cluster-pair",
        description="Compare clusterings by stable-matching, greedy and optimal cluster pairing.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="write a synthetic label file")
    p.add_argument("--mode", choices=("balanced", "unbalanced"), default="balanced")
    p.add_argument("--communities", type=int, required=True)
    p.add_argument("--rows", type=int, required=True)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--seed-from-entropy", action="store_true")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("pair", help="pair the clusters of two label files")
    _add_label_flags(p)
    p.add_argument("--method", choices=("smbp", "mwm", "mmm", "cr"), default="smbp")
    p.add_argument("--proposer", choices=("row", "col"), default="row")
    p.add_argument("--with-mwm", action="store_true", help="also report accuracy against MWM")
    p.add_argument("--features", help="numeric feature CSV (needed for --method cr)")
    p.add_argument("--show-pairs", action="store_true")
    p.add_argument("--report", help="append a report record to this file")
    p.add_argument("--report-format", choices=("json", "csv"))
    p.set_defaults(func=cmd_pair)

    p = sub.add_parser("bench", help="run benchmark experiments")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--suite", choices=("small", "medium", "paper"))
    src.add_argument("--spec", help="JSON file with experiment specs")
    p.add_argument("--out", help="append the report to this file")
    p.add_argument("--report-format", choices=("json", "csv"))
    p.add_argument("--time-limit", type=float, help="per-method pairing limit in seconds")
    p.add_argument("--iterations", type=int, help="override iteration counts")
    p.add_argument("--timing-scope", choices=("pairing-only", "pairing-plus-contingency"))
    p.add_argument("--proposer", choices=("row", "col"))
    p.add_argument("--seed", type=int, default=DEFAULT_SEED, help="base seed for --suite")
    p.add_argument("--seed-from-entropy", action="store_true")
    p.add_argument("--threads", type=int, default=None)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("contingency", help="write the contingency matrix of two label files")
    _add_label_flags(p)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_contingency)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        if getattr(args, "threads", None) is None and hasattr(args, "threads"):
            args.threads = default_threads()
        return args.func(args)
    except InvalidInput as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
