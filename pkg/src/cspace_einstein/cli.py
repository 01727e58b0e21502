"""
Command line front end.

    cspace-einstein solve -l 1 -m 2 -n 3
    cspace-einstein flag -l 1 -m 2 -n 3
    cspace-einstein degree -l 3 -m 4 -n 5 --t 1
    cspace-einstein classify --family E
    cspace-einstein reproduce --target table2

Exit codes: 0 success, 2 usage error, 3 numerical failure, 4 a reproduced
value is off by more than the target tolerance.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
import tempfile
from pathlib import Path

import mpmath

from . import reference
from .classify import CLASSICAL, enumerate_classical, exceptional_catalog
from .core import make_params
from .flag import BoundaryRootError, flag_einstein_metrics, lemma_jacobians, mapping_degree
from .solver import METHODS, SolveOptions, SolverError, solve

EXIT_OK, EXIT_USAGE, EXIT_NUMERIC, EXIT_MISMATCH = 0, 2, 3, 4
CACHE_ENV = "EINSTEIN_CACHE_DIR"
MP_DIGITS = 40
SCHEMA_VERSION = 1


class UsageError(ValueError):
    pass


# ------------------------------------------------------------ serialization

def num(v):
    """Doubles stay JSON numbers (Python writes the shortest repr that
    reads back to the same double); mpf values become decimal strings."""
    if isinstance(v, mpmath.mpf):
        return mpmath.nstr(v, MP_DIGITS, strip_zeros=False)
    return float(v)


def report_to_dict(report) -> dict:
    p = report.params
    sols = []
    for s in report.solutions:
        g = s.metric
        sols.append({
            "x1": num(g.x1), "x2": num(g.x2), "x3": num(g.x3),
            "v4": num(g.v4), "v5": num(g.v5), "c": num(g.c),
            "lambda": num(s.lam),
            "residual": num(s.residual.norm),
            "method": s.method,
            "condition": float(s.condition),
        })
    return {
        "schema_version": SCHEMA_VERSION,
        "params": {"l": p.l, "m": p.m, "n": p.n, "dim": p.dim_m},
        "precision": report.precision,
        "family_complete": report.family_complete,
        "solutions": sols,
        "isometry_classes": [list(c) for c in report.isometry_classes],
        "diagnostics": list(report.diagnostics),
        "wall_time": report.wall_time,
    }


def dumps(payload) -> str:
    return json.dumps(payload, indent=2) + "\n"


def atomic_write(path: Path, text: str) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_csv(path: Path, payload: dict) -> None:
    cols = ["l", "m", "n", "index", "x1", "x2", "x3", "v4", "v5", "c",
            "lambda", "residual", "method", "condition"]
    p = payload["params"]
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(cols)
        for i, s in enumerate(payload["solutions"]):
            w.writerow([p["l"], p["m"], p["n"], i] + [s[c] for c in cols[4:]])


# ------------------------------------------------------------ cache

def cache_path(cache_dir: Path, l: int, m: int, n: int, precision: str) -> Path:
    return Path(cache_dir) / f"M_{l}_{m}_{n}_{precision}.json"


def cache_load(path: Path) -> dict | None:
    """The cached payload, or None when missing or unreadable."""
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, ValueError):
        return None
    if not isinstance(data, dict) or data.get("schema_version") != SCHEMA_VERSION:
        return None
    if not isinstance(data.get("solutions"), list):
        return None
    return data


# ------------------------------------------------------------ commands

def _params(args):
    try:
        return make_params(args.l, args.m, args.n)
    except (TypeError, ValueError) as exc:
        raise UsageError(str(exc)) from exc


def _emit(args, payload: dict) -> None:
    text = dumps(payload)
    if getattr(args, "json", None):
        atomic_write(Path(args.json), text)
    else:
        sys.stdout.write(text)


def cmd_solve(args) -> int:
    p = _params(args)
    try:
        opts = SolveOptions(method=args.method, precision=args.precision,
                            box=tuple(args.box) if args.box else None, tol=args.tol)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    # cached runs are only those with default method, box and tolerance,
    # since one file per (l, m, n, precision) cannot tell other runs apart
    cacheable = not args.no_cache and args.method == "auto" and args.box is None \
        and args.tol == SolveOptions.tol
    cache_dir = args.cache_dir or os.environ.get(CACHE_ENV)
    path = cache_path(Path(cache_dir), p.l, p.m, p.n, args.precision) if cache_dir and cacheable else None
    payload = cache_load(path) if path else None
    if payload is None:
        try:
            report = solve(p, opts)
        except SolverError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_NUMERIC
        payload = report_to_dict(report)
        if path:
            atomic_write(path, dumps(payload))
    for d in payload["diagnostics"]:
        if d.startswith("family-incomplete"):
            print(f"warning: {d}", file=sys.stderr)
    _emit(args, payload)
    if args.csv:
        write_csv(Path(args.csv), payload)
    return EXIT_OK


def cmd_flag(args) -> int:
    p = _params(args)
    jac = lemma_jacobians(p)
    metrics = [{"x1": f.x1, "x2": f.x2, "x3": f.x3, "lambda": f.lam, "jacobian_t0": j}
               for f, j in zip(flag_einstein_metrics(p), jac)]
    _emit(args, {"params": {"l": p.l, "m": p.m, "n": p.n}, "metrics": metrics})
    return EXIT_OK


def cmd_degree(args) -> int:
    p = _params(args)
    box = tuple(args.box) if args.box else None
    if box is not None and not 0 < box[0] < box[1]:
        raise UsageError(f"invalid box {box}")
    try:
        cert = mapping_degree(p, args.t, box=box)
    except (BoundaryRootError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    payload = {"params": {"l": p.l, "m": p.m, "n": p.n}, **cert.to_dict()}
    if cert.degree is None:
        print("warning: singular root, degree not certified", file=sys.stderr)
    _emit(args, payload)
    return EXIT_OK


def _record_dict(r) -> dict:
    return {
        "group": r.group, "rank": r.rank, "name": r.name, "type": r.ctype,
        "stabilizer": {"factors": [str(f) for f in r.stabilizer.factors],
                       "torus": r.stabilizer.torus},
        "flag": r.flag, "label": r.label,
        "fiber_rank": r.fiber_rank, "b2F": r.b2F, "b2M": r.b2M,
    }


def cmd_classify(args) -> int:
    if args.family in CLASSICAL:
        if args.rank_max < 2:
            raise UsageError("--rank-max must be at least 2")
        records = enumerate_classical(args.family, args.rank_max)
    else:
        records = exceptional_catalog()
    _emit(args, {"family": args.family, "records": [_record_dict(r) for r in records]})
    return EXIT_OK


def _space_dict(res) -> dict:
    return {
        "params": list(res.params),
        "printed_label": list(res.printed) if res.printed else None,
        "solutions_expected": res.n_expected,
        "solutions_found": res.n_found,
        "classes_expected": res.classes_expected,
        "classes_found": res.classes_found,
        "rows": [{"reference": [str(v) for v in r.expected],
                  "computed": None if r.computed is None else [num(v) for v in r.computed],
                  "deviation": r.deviation} for r in res.rows],
        "max_deviation": res.max_deviation,
        "tolerance": res.tol,
        "relative": res.relative,
        "ok": res.ok,
    }


def cmd_reproduce(args) -> int:
    results = reference.compare(args.target)
    for res in results:
        label = "M_{%d,%d,%d}" % res.params
        if res.printed:
            label += " (printed as M_{%d,%d,%d})" % res.printed
        kind = "rel" if res.relative else "abs"
        status = "ok" if res.ok else "MISMATCH"
        print(f"{label:42s} found {res.n_found}/{res.n_expected}  "
              f"max {kind} dev {res.max_deviation:.2e} (tol {res.tol:.0e})  {status}")
        if args.verbose:
            for r in res.rows:
                comp = "-" if r.computed is None else ", ".join(f"{float(v):.10g}" for v in r.computed)
                print(f"    reference ({', '.join(str(v) for v in r.expected)})  computed ({comp})")
    if args.json:
        payload = {"target": args.target, "spaces": [_space_dict(r) for r in results]}
        atomic_write(Path(args.json), dumps(payload))
    return EXIT_OK if all(r.ok for r in results) else EXIT_MISMATCH


# ------------------------------------------------------------ parser

def _add_space(sp):
    sp.add_argument("-l", type=int, required=True)
    sp.add_argument("-m", type=int, required=True)
    sp.add_argument("-n", type=int, required=True)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cspace-einstein",
        description="Invariant Einstein metrics on SU(l+m+n)/SU(l)xSU(m)xSU(n).")
    sub = parser.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="find all invariant Einstein metrics")
    _add_space(s)
    s.add_argument("--method", choices=METHODS, default="auto")
    s.add_argument("--precision", choices=("double", "extended", "auto"), default="auto")
    s.add_argument("--box", type=float, nargs=2, metavar=("EPS", "L"))
    s.add_argument("--tol", type=float, default=SolveOptions.tol)
    s.add_argument("--json", metavar="PATH")
    s.add_argument("--csv", metavar="PATH")
    s.add_argument("--cache-dir", metavar="DIR")
    s.add_argument("--no-cache", action="store_true")
    s.set_defaults(func=cmd_solve)

    f = sub.add_parser("flag", help="closed-form Einstein metrics of the base flag manifold")
    _add_space(f)
    f.add_argument("--json", metavar="PATH")
    f.set_defaults(func=cmd_flag)

    d = sub.add_parser("degree", help="mapping degree certificate at homotopy time t")
    _add_space(d)
    d.add_argument("--t", type=float, default=1.0)
    d.add_argument("--box", type=float, nargs=2, metavar=("EPS", "L"))
    d.add_argument("--json", metavar="PATH")
    d.set_defaults(func=cmd_degree)

    c = sub.add_parser("classify", help="list non-Kähler C-spaces")
    c.add_argument("--family", choices=list(CLASSICAL) + ["E"], default="A",
                   help="classical family, or E for the exceptional catalog")
    c.add_argument("--rank-max", type=int, default=6)
    c.add_argument("--json", metavar="PATH")
    c.set_defaults(func=cmd_classify)

    r = sub.add_parser("reproduce", help="compare against stored reference values")
    r.add_argument("--target", choices=reference.target_names(), required=True)
    r.add_argument("--json", metavar="PATH")
    r.add_argument("-v", "--verbose", action="store_true")
    r.set_defaults(func=cmd_reproduce)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "tol", 1.0) is not None and not getattr(args, "tol", 1.0) > 0:
        parser.error("--tol must be positive")
    try:
        return args.func(args)
    except UsageError as exc:
        parser.error(str(exc))
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
