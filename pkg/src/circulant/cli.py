"""Command-line entry point.

Structured output goes to stdout as JSON lines (or TSV with ``--format tsv``),
diagnostics to stderr. Exit codes: 0 success, 1 verification failure,
2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Sequence

from . import bounds, builders, records, search, stitching, sumsets, torus
from .cyclic import ConnectionSet, normalize
from .metrics import DisconnectedGraphError, WorkCapExceeded, diameter

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class Emitter:
    def __init__(self, fmt: str, stream=None):
        self.fmt = fmt
        self.stream = stream or sys.stdout
        self._header: tuple[str, ...] | None = None

    def __call__(self, obj: dict) -> None:
        if self.fmt == "json":
            print(json.dumps(obj, default=_jsonable), file=self.stream, flush=True)
            return
        keys = tuple(obj)
        if keys != self._header:
            print("\t".join(keys), file=self.stream)
            self._header = keys
        print("\t".join(_tsv_cell(obj[k]) for k in keys), file=self.stream, flush=True)


def _jsonable(x):
    if hasattr(x, "numerator") and hasattr(x, "denominator"):
        return str(x)
    if isinstance(x, (set, frozenset, tuple)):
        return sorted(x) if isinstance(x, (set, frozenset)) else list(x)
    raise TypeError(f"cannot serialise {type(x).__name__}")


def _tsv_cell(v) -> str:
    if isinstance(v, (list, tuple)):
        return ",".join(map(str, v))
    if isinstance(v, dict):
        return json.dumps(v, default=_jsonable)
    return "" if v is None else str(v)


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _range(text: str) -> tuple[int, int | None]:
    lo, sep, hi = text.partition(":")
    if not sep:
        raise argparse.ArgumentTypeError("range must look like A:B")
    try:
        return int(lo or 1), (int(hi) if hi else None)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad range {text!r}") from None


def _graph_arg(text: str) -> ConnectionSet:
    try:
        if os.path.exists(text):
            with open(text) as fh:
                text = fh.read().strip().splitlines()[0]
        return ConnectionSet.from_json(text)
    except (ValueError, KeyError, IndexError, TypeError) as exc:
        raise UsageError(f"bad graph {text[:60]!r}: {exc}") from None


def cmd_diameter(args, emit) -> int:
    try:
        g = normalize(args.n, args.gens, directed=args.directed)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    try:
        d = diameter(g, work_cap=args.work_cap)
    except DisconnectedGraphError as exc:
        print(exc, file=sys.stderr)
        emit({"order": g.n, "degree": g.degree, "diameter": None, "connected": False})
        return EXIT_FAIL
    emit({"diameter": d, "order": g.n, "degree": g.degree})
    return EXIT_OK


def cmd_decompose(args, emit) -> int:
    p = torus.TorusParams(args.u, args.d, args.s, args.m)
    report = torus.validate_torus(p)
    if not report:
        raise UsageError("; ".join(report.violations))
    w = torus.decompose_pair(p, args.x, args.y)
    emit({"h": w.h, "ell": w.ell, "h_bound": p.h_bound, "ell_bound": p.ell_bound, "r": p.r, "s": p.s})
    return EXIT_OK


def cmd_construct(args, emit) -> int:
    if args.list_families:
        for f in builders.FAMILIES.values():
            emit(f.describe())
        return EXIT_OK
    if args.family is None or args.q is None:
        raise UsageError("construct needs --family and --q (or --list-families)")
    if args.family not in builders.FAMILIES:
        raise UsageError(f"unknown family {args.family!r}; see --list-families")
    try:
        graph, cert = builders.family_instantiate(args.family, args.q)
    except builders.ConstructionError as exc:
        raise UsageError(str(exc)) from None
    out = {"family": args.family, "q": args.q, **cert.as_dict()}
    if args.bfs:
        try:
            out["bfs_diameter"] = diameter(graph, work_cap=args.work_cap)
        except WorkCapExceeded as exc:
            print(exc, file=sys.stderr)
            out["bfs_diameter"] = None
    emit(out)
    if args.emit_graph:
        print(graph.to_json(), flush=True)
    measured = out.get("bfs_diameter")
    ok = cert.valid and (measured is None or measured <= cert.claimed_diameter)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_stitch(args, emit) -> int:
    a, b = _graph_arg(args.a), _graph_arg(args.b)
    try:
        g = stitching.stitch(a, b, args.k1, args.k2, verify=False)
    except stitching.StitchError as exc:
        raise UsageError(str(exc)) from None
    print(g.to_json(), flush=True)
    report = {"order": g.n, "degree": g.degree, "diameter_bound": args.k1 + args.k2}
    status = EXIT_OK
    try:
        report["diameter"] = diameter(g, work_cap=args.work_cap)
        report["verified"] = report["diameter"] <= args.k1 + args.k2
    except WorkCapExceeded as exc:
        print(exc, file=sys.stderr)
        report["diameter"], report["verified"] = None, None
    except DisconnectedGraphError as exc:
        print(exc, file=sys.stderr)
        report["diameter"], report["verified"] = None, False
    if report["verified"] is False:
        status = EXIT_FAIL
    emit(report)
    return status


def cmd_search(args, emit) -> int:
    try:
        spec = search.SearchSpec(
            args.d, args.k, args.directed, args.mode, args.range, args.budget, args.seed
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    result = search.find_max_order(spec, jobs=args.jobs, progress=lambda ev: emit({"event": "probe", **ev}))
    emit({"event": "result", "d": args.d, "k": args.k, "directed": args.directed, **result.as_dict()})
    return EXIT_OK


def _verify_row(args: tuple) -> dict:
    entry, work_cap = args
    return records.verify_record(entry, work_cap=work_cap).as_dict()


def cmd_verify_records(args, emit) -> int:
    entries = records.load_records()
    todo, skipped = [], 0
    for e in entries:
        if args.max_n is not None and e.n > args.max_n:
            emit({"d": e.d, "k": e.k, "n": e.n, "ok": None, "skipped": f"order above {args.max_n}"})
            skipped += 1
        else:
            todo.append((e, args.work_cap))
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            rows = list(pool.map(_verify_row, todo))
    else:
        rows = [_verify_row(t) for t in todo]
    passed = failed = 0
    for row in rows:
        emit(row)
        if row["ok"]:
            passed += 1
        elif row["skipped"]:
            skipped += 1
        else:
            failed += 1
    emit({"summary": True, "passed": passed, "failed": failed, "skipped": skipped})
    return EXIT_OK if failed == 0 else EXIT_FAIL


def cmd_sumset(args, emit) -> int:
    if args.n < 1 or args.k < 1 or not args.set:
        raise UsageError("sumset needs n >= 1, k >= 1 and a nonempty set")
    kA = sumsets.sumset_power(args.set, args.k, args.n)
    emit({"covers": len(kA) == args.n, "size": len(kA)})
    return EXIT_OK


def cmd_bounds(args, emit) -> int:
    did = False
    if args.rmax is not None:
        emit({"k": args.rmax, "rmax": bounds.r_max(args.rmax)})
        did = True
    if args.ceiling is not None:
        L, R = bounds.direct_product_ceiling(args.ceiling)
        emit({"k": args.ceiling, "L": str(L), "R": R})
        did = True
    if args.table or not did:
        table = bounds.bounds_table(args.max_k)
        for row, values in table.items():
            for bv in values:
                emit({"row": row, "k": bv.k, "L": float(bv.L), "R": round(bv.R, 7), "from": bv.provenance})
    return EXIT_OK


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--work-cap", type=int, default=argparse.SUPPRESS, help="BFS edge-traversal limit")
    common.add_argument("--jobs", type=_positive, default=argparse.SUPPRESS, help="worker processes")
    common.add_argument("--format", choices=("json", "tsv"), default=argparse.SUPPRESS)

    p = argparse.ArgumentParser(prog="circulant", parents=[common], description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    s = sub.add_parser("diameter", parents=[common], help="BFS diameter of Cay(Z_n, S)")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--gens", type=_int_list, required=True)
    s.add_argument("--directed", action="store_true")
    s.set_defaults(func=cmd_diameter)

    s = sub.add_parser("decompose", parents=[common], help="(h, ell) witness on a two-coordinate torus")
    for name in ("u", "d", "s", "m", "x", "y"):
        s.add_argument(f"--{name}", type=int, required=True)
    s.set_defaults(func=cmd_decompose)

    s = sub.add_parser("construct", parents=[common], help="instantiate a parametric family")
    s.add_argument("--family")
    s.add_argument("--q", type=int)
    s.add_argument("--emit-graph", action="store_true")
    s.add_argument("--bfs", action="store_true", help="also measure the diameter when under the work cap")
    s.add_argument("--list-families", action="store_true")
    s.set_defaults(func=cmd_construct)

    s = sub.add_parser("stitch", parents=[common], help="combine two circulants")
    s.add_argument("--a", required=True, help="graph JSON line or a file holding one")
    s.add_argument("--b", required=True)
    s.add_argument("--k1", type=int, required=True)
    s.add_argument("--k2", type=int, required=True)
    s.set_defaults(func=cmd_stitch)

    s = sub.add_parser("search", parents=[common], help="largest order with given degree and diameter")
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--directed", action="store_true")
    s.add_argument("--mode", choices=("exhaustive", "heuristic"), default="exhaustive")
    s.add_argument("--range", type=_range, default=(1, None))
    s.add_argument("--budget", type=int)
    s.add_argument("--seed", type=int)
    s.set_defaults(func=cmd_search)

    s = sub.add_parser("verify-records", parents=[common], help="rebuild and check every stored record")
    s.add_argument("--max-n", type=int)
    s.set_defaults(func=cmd_verify_records)

    s = sub.add_parser("sumset", parents=[common], help="size of the k-fold sumset")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--set", type=_int_list, required=True)
    s.add_argument("--k", type=int, required=True)
    s.set_defaults(func=cmd_sumset)

    s = sub.add_parser("bounds", parents=[common], help="R values, ceilings and the best-bound table")
    s.add_argument("--table", action="store_true")
    s.add_argument("--ceiling", type=_positive)
    s.add_argument("--rmax", type=_positive)
    s.add_argument("--max-k", type=int, default=9)
    s.set_defaults(func=cmd_bounds)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    args.work_cap = getattr(args, "work_cap", None)
    args.jobs = getattr(args, "jobs", None) or os.cpu_count() or 1
    fmt = getattr(args, "format", "json")
    # workers read the cap from the environment; restored on return so
    # repeated in-process calls do not inherit it
    saved_cap = os.environ.get("CIRCULANT_WORK_CAP")
    if args.work_cap is not None:
        os.environ["CIRCULANT_WORK_CAP"] = str(args.work_cap)
    try:
        return args.func(args, Emitter(fmt))
    except UsageError as exc:
        print(f"circulant {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (AssertionError, WorkCapExceeded) as exc:
        print(f"circulant {args.command}: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except BrokenPipeError:
        # reader went away (e.g. piped into head); not an error of ours
        devnull = os.open(os.devnull, os.O_WRONLY)
        os.dup2(devnull, sys.stdout.fileno())
        return EXIT_OK
    finally:
        if saved_cap is None:
            os.environ.pop("CIRCULANT_WORK_CAP", None)
        else:
            os.environ["CIRCULANT_WORK_CAP"] = saved_cap


if __name__ == "__main__":
    sys.exit(main())
