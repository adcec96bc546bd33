"""Command line entry point: ``supercohom <command> ...``."""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

from .algebra import AlgebraError, d_range_of_U, parse_algebra
from .verify import EXIT_MISMATCH, EXIT_OK, EXIT_USAGE, SUITES


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _usage(msg: str) -> int:
    print(f"supercohom: error: {msg}", file=sys.stderr)
    return EXIT_USAGE


def cmd_algebra(args) -> int:
    if args.action != "info":
        return _usage(f"unknown algebra action {args.action!r}")
    L = parse_algebra(args.desc)
    z = {}
    for k in range(L.dim):
        z[str(L.z_degree[k])] = z.get(str(L.z_degree[k]), 0) + 1
    info = {
        "algebra": L.descriptor,
        "dim": L.dim,
        "dim_even": sum(1 for p in L.parity if p == 0),
        "dim_odd": sum(1 for p in L.parity if p == 1),
        "z_grading": dict(sorted(z.items(), key=lambda kv: int(kv[0]))),
        "d_range_of_U": list(d_range_of_U(L)),
        "simple_roots": [L.labels[k] for k in L.simple_root_indices("L", 1)],
        "basis": list(L.labels),
    }
    if args.json:
        print(json.dumps(info, indent=2))
    else:
        for k, v in info.items():
            if k != "basis":
                print(f"{k}\t{v}")
    return EXIT_OK


def cmd_cohomology(args) -> int:
    from .cache import ModuleCache
    from .cohomology import cohomology
    from .descriptors import DescriptorError, build_module
    from .report import cohomology_outputs

    L = parse_algebra(args.algebra)
    try:
        V = build_module(L, args.module, ModuleCache())
    except DescriptorError as e:
        return _usage(str(e))
    rep = cohomology(L, V, args.degree, method=args.method, representatives=not args.no_representatives)
    print(f"dim H^{rep.degree}({rep.algebra}, {rep.module}) = {rep.dim_H}\t[{rep.method}, {rep.elapsed:.2f}s]")
    for f in rep.flags:
        print(f"flag: {f}")
    if args.out:
        for p in cohomology_outputs(rep, args.out):
            print(f"wrote {p}")
    return EXIT_MISMATCH if rep.flags else EXIT_OK


def cmd_screen(args) -> int:
    from .report import screen_outputs
    from .screening import run_screen

    L = parse_algebra(args.algebra)
    if L.kind != "sl" or not (L.n == 1 or (L.m, L.n) == (3, 2)):
        return _usage("screening is implemented for sl(m|1) and sl(3|2)")
    rep = run_screen(L, window=args.window, jobs=args.jobs)
    for w in rep.warnings:
        print(f"warning: {w}", file=sys.stderr)
    for name, ws in rep.stages.items():
        print(f"{name}\t{len(ws)}")
    print("final\t" + " ".join(rep.stages.get("final", [])))
    print(f"tau orbits\t{len(rep.tau_orbits)}")
    if args.out:
        for p in screen_outputs(rep, args.out):
            print(f"wrote {p}")
    return EXIT_OK


def cmd_verify(args) -> int:
    from .report import verify_outputs
    from .verify import run_suite

    records, code = run_suite(args.suite, jobs=args.jobs, budget_minutes=args.budget_minutes,
                              modular_prepass=not args.no_modular_prepass)
    for r in records:
        print(f"{r['status'].upper():7s} {r['name']:28s} {r['elapsed']:8.2f}s")
    if args.out:
        for p in verify_outputs(records, args.out):
            print(f"wrote {p}")
    return code


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="supercohom", description="Exact cohomology and screening for sl(m|n), gl(m|n).")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    a = sub.add_parser("algebra", help="describe an algebra")
    a.add_argument("desc", help="sl:m:n or gl:m:n")
    a.add_argument("action", choices=["info"])
    a.add_argument("--json", action="store_true")
    a.set_defaults(func=cmd_algebra)

    c = sub.add_parser("cohomology", help="dim H^n(L, V)")
    c.add_argument("--algebra", required=True)
    c.add_argument("--module", required=True, help="module descriptor, e.g. adjoint or hw:1,1,1/-1,-2")
    c.add_argument("--degree", type=int, required=True, choices=[0, 1, 2])
    c.add_argument("--method", choices=["brute", "invariant", "both"], default="invariant")
    c.add_argument("--no-representatives", action="store_true")
    c.add_argument("--out", help="JSON path; TSV and PNG are written next to it")
    c.set_defaults(func=cmd_cohomology)

    s = sub.add_parser("screen", help="screen highest weights")
    s.add_argument("--algebra", required=True)
    s.add_argument("--window", type=int, default=12)
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--out")
    s.set_defaults(func=cmd_screen)

    v = sub.add_parser("verify-paper", help="run a reproduction suite")
    v.add_argument("--suite", choices=SUITES, default="core")
    v.add_argument("--jobs", type=int, default=1)
    v.add_argument("--budget-minutes", type=float)
    v.add_argument("--no-modular-prepass", action="store_true")
    v.add_argument("--out")
    v.set_defaults(func=cmd_verify)
    return ap


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except AlgebraError as e:
        return _usage(str(e))


if __name__ == "__main__":
    sys.exit(main())
