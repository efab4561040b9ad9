"""Command line entry point.

Exit codes: 0 success, 1 failed verification, 2 malformed input.
"""
from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from . import harness
from .io import PathFormatError, dumps_csv, dumps_json, read_corpus, read_path
from .paths import tree_reduce
from .signature import DEFAULT_LEVEL, signature
from .unparam import METRICS, canonicalize
from .variation import DEFAULT_REFINE, p_var_distance, p_variation, p_variation_lift


def _result_text(res) -> str:
    lines = [
        f"value: {res.value!r}",
        f"exact: {str(res.exact).lower()}",
        f"refinement_level: {res.refinement_level}",
        "partition: " + ",".join(repr(float(t)) for t in res.optimal_partition),
    ]
    if res.level_values:
        lines.append("level_values: " + ",".join(repr(float(v)) for v in res.level_values))
    return "\n".join(lines) + "\n"


def _common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--p", type=float, default=None, help="variation exponent")
    parser.add_argument("--level", type=int, default=None, help="truncation level N")
    parser.add_argument("--refine", type=int, default=None, help="dyadic refinement k")
    parser.add_argument("--tol", type=float, default=None, help="bound-check tolerance")
    parser.add_argument("--seed", type=int, default=None, help="seed for randomised sweeps")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sigpaths", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sig", help="print the truncated signature of a path file")
    p.add_argument("path")
    _common(p)

    p = sub.add_parser("pvar", help="p-variation of a path (lifted gauge if --level > 1)")
    p.add_argument("path")
    _common(p)

    p = sub.add_parser("dist", help="distance between two paths or a corpus matrix")
    p.add_argument("paths", nargs="*")
    p.add_argument("--matrix", metavar="CORPUS", help="corpus file listing path files")
    p.add_argument("--metric", choices=["pvar", *METRICS], default="pvar",
                   help="pvar: parameterised p-variation distance; d, star, sig: class metrics")
    _common(p)

    p = sub.add_parser("reduce", help="print the tree-reduced constant-speed path")
    p.add_argument("path")
    p.add_argument("--format", choices=["json", "csv"], default="json")
    _common(p)

    for name in ("verify", "sweep"):
        p = sub.add_parser(name, help=f"{name} a harness check ('all' for every check)"
                           if name == "verify" else "write a check's sweep data as CSV")
        p.add_argument("check", choices=["all", *sorted(harness.CHECKS)])
        p.add_argument("--jobs", type=int, default=1)
        if name == "sweep":
            p.add_argument("--csv", required=True, help="output file ('-' for stdout)")
        _common(p)
    return parser


def _options(args) -> dict:
    return {"p": args.p, "level": args.level, "refine": args.refine, "seed": args.seed}


def _dist_matrix(args, out) -> int:
    files = read_corpus(args.matrix)
    paths = [read_path(f) for f in files]
    p = 1.0 if args.p is None else args.p
    level = DEFAULT_LEVEL if args.level is None else args.level
    refine = DEFAULT_REFINE if args.refine is None else args.refine
    n = len(paths)
    D = np.zeros((n, n))
    if args.metric == "pvar":
        for i in range(n):
            for j in range(i + 1, n):
                D[i, j] = D[j, i] = p_var_distance(paths[i], paths[j], p, level, refine).value
    else:
        classes = [canonicalize(x, p, level) for x in paths]
        fn = METRICS[args.metric]
        for i in range(n):
            for j in range(i + 1, n):
                D[i, j] = D[j, i] = fn(classes[i], classes[j]) if args.metric == "sig" else fn(classes[i], classes[j], refine)
    w = csv.writer(out, lineterminator="\n")
    out.write(f"# metric={args.metric} p={p!r} N={level} k={refine}\n")
    w.writerow(["path"] + [f.name for f in files])
    for f, row in zip(files, D):
        w.writerow([f.name] + [repr(float(v)) for v in row])
    return 0


def _run_checks(args):
    names = None if args.check == "all" else [args.check]
    if args.tol is None:
        return harness.run_all(names, jobs=args.jobs, **_options(args))
    previous = os.environ.get(harness.TOL_ENV)
    os.environ[harness.TOL_ENV] = repr(args.tol)
    try:
        return harness.run_all(names, jobs=args.jobs, **_options(args))
    finally:
        if previous is None:
            del os.environ[harness.TOL_ENV]
        else:
            os.environ[harness.TOL_ENV] = previous


def main(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    args = build_parser().parse_args(argv)
    try:
        if args.command == "sig":
            X = read_path(args.path)
            out.write(signature(X, args.level or DEFAULT_LEVEL).serialize())
            return 0
        if args.command == "pvar":
            X = read_path(args.path)
            p = 1.0 if args.p is None else args.p
            level = args.level or 1
            res = p_variation(X, p) if level == 1 else p_variation_lift(
                X, p, level, DEFAULT_REFINE if args.refine is None else args.refine)
            out.write(_result_text(res))
            return 0
        if args.command == "dist":
            if args.matrix:
                return _dist_matrix(args, out)
            if len(args.paths) != 2:
                err.write("dist needs exactly two path files (or --matrix CORPUS)\n")
                return 2
            X, Y = (read_path(a) for a in args.paths)
            p = 1.0 if args.p is None else args.p
            level = args.level or 1
            refine = DEFAULT_REFINE if args.refine is None else args.refine
            if args.metric == "pvar":
                out.write(_result_text(p_var_distance(X, Y, p, level, refine)))
            else:
                A, B = canonicalize(X, p, level), canonicalize(Y, p, level)
                fn = METRICS[args.metric]
                value = fn(A, B) if args.metric == "sig" else fn(A, B, refine)
                out.write(f"value: {value!r}\n")
            return 0
        if args.command == "reduce":
            X = tree_reduce(read_path(args.path))
            out.write(dumps_csv(X) if args.format == "csv" else dumps_json(X))
            return 0
        if args.command == "verify":
            reports = _run_checks(args)
            out.write("\n\n".join(r.to_text() for r in reports) + "\n")
            failed = [r.check_name for r in reports if not r.passed]
            out.write(f"\n{len(reports) - len(failed)}/{len(reports)} checks passed\n")
            return 1 if failed else 0
        if args.command == "sweep":
            reports = [r for r in _run_checks(args) if r.sweep]
            if not reports:
                err.write(f"check {args.check!r} has no sweep data\n")
                return 2
            text = "".join(r.sweep_csv() for r in reports)
            if args.csv == "-":
                out.write(text)
            else:
                Path(args.csv).write_text(text)
            return 0 if all(r.passed for r in reports) else 1
    except (PathFormatError, json.JSONDecodeError) as exc:
        err.write(f"error: {exc}\n")
        return 2
    except ValueError as exc:
        err.write(f"error: {exc}\n")
        return 2
    return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
