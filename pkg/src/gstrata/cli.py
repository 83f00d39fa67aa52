"""
Command-line entry point.

    gstrata strata --model wonderful --type A1
    gstrata strata --model proj_matrices --n 3 --dot
    gstrata canon --model proj_matrices --n 3 --orbit 1 --u s2 --v s1.s2
    gstrata verify example1 --q 2,3,5,7,11,13
    gstrata verify kls --n 3 --q 2 --parabolic a1
    gstrata model --model wonderful --type A2 --format dot

Exit status: 0 pass, 1 verification failed, 2 usage or guard error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .ffverify.checks import (
    Report, verify_cell_equivalence, verify_descriptors, verify_example1,
    verify_example2, verify_kls, verify_partition,
)
from .ffverify.field import SUPPORTED_PRIMES, GuardError
from .orbits import (
    OPPOSITE, STANDARD, ModelError, builtin_model, canonicalize_cell,
    closed_orbit_criterion, enumerate_strata,
)
from .weyl import WeylError, parse_subset, subset_str, subsets

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

CHECKS = ("example1", "example2", "kls", "cells", "partition", "descriptors")


class UsageError(ValueError):
    pass


def _q_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"--q expects comma-separated primes, got {text!r}") from None


def _load_model(args):
    if args.model == "wonderful":
        if not args.type:
            raise UsageError("--model wonderful needs --type (e.g. A2)")
        return builtin_model("wonderful", args.type)
    if args.model == "proj_matrices":
        if args.n is None:
            raise UsageError("--model proj_matrices needs --n")
        return builtin_model("proj_matrices", args.n)
    raise UsageError(f"unknown model {args.model!r}; expected 'wonderful' or 'proj_matrices'")


def _orbit(model, key: str):
    names = [o.name for o in model.orbits]
    if key in names:
        return model.orbit(key)
    if key.isdigit() and f"rank{key}" in names:
        return model.orbit(f"rank{key}")
    return model.orbit(key)


def _emit(text: str, out):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# -- subcommands ---------------------------------------------------------------

def cmd_strata(args) -> int:
    model = _load_model(args)
    fmt = "dot" if args.dot else args.format
    if fmt == "dot":
        _emit(model.to_dot(), args.out)
        return EXIT_PASS
    strata = enumerate_strata(model, closed_orbit_criterion if args.nonempty else None)
    if fmt == "text":
        lines = [f"{s.orbit.name}\t" + "\t".join(s.words()) for s in strata]
        _emit("\n".join(lines) + "\n" if lines else "", args.out)
    else:
        _emit(json.dumps([s.to_dict() for s in strata]) + "\n", args.out)
    return EXIT_PASS


def cmd_canon(args) -> int:
    model = _load_model(args)
    orbit = _orbit(model, args.orbit)
    G = model.group
    cell = canonicalize_cell(orbit, G.element(args.u), G.element(args.v), args.side)
    if args.format == "text":
        _emit(f"({cell.u.word_str()}, {cell.v.word_str()})\n", args.out)
    else:
        _emit(json.dumps(cell.to_dict(), sort_keys=True) + "\n", args.out)
    return EXIT_PASS


def cmd_model(args) -> int:
    model = _load_model(args)
    _emit(model.to_dot() if args.format == "dot" else json.dumps(model.to_dict(), indent=2) + "\n",
          args.out)
    return EXIT_PASS


def _combine(check: str, params: dict, reports: list[Report]) -> Report:
    if len(reports) == 1:
        return reports[0]
    counts = {json.dumps(r.params, sort_keys=True): r.counts for r in reports}
    witnesses = [{"params": r.params, "witnesses": r.witnesses} for r in reports if not r.passed]
    return Report(check, params, all(r.passed for r in reports), counts, witnesses)


def _run_check(args) -> Report:
    check = args.check
    if check == "example1":
        return verify_example1(_q_list(args.q or ",".join(map(str, SUPPORTED_PRIMES))))
    if check == "example2":
        return verify_example2(_q_list(args.q or "2,3"))
    qs = _q_list(args.q or "2")
    ns = [args.n] if args.n is not None else [2, 3]
    if check == "kls":
        from .ffverify.bruhat import type_a
        reports = []
        for n in ns:
            G = type_a(n)
            if args.parabolic is not None:
                Ps = [parse_subset(G, args.parabolic)]
                if not Ps[0]:
                    raise UsageError("--parabolic must be a nonempty subset")
            else:
                Ps = [P for P in subsets(G) if P]
            Q = parse_subset(G, args.sub or "")
            reports += [verify_kls(n, q, P, Q) for q in qs for P in Ps]
        return _combine("kls", {"n": ns, "q": qs}, reports)
    fn = {"cells": verify_cell_equivalence, "partition": verify_partition,
          "descriptors": verify_descriptors}[check]
    return _combine(check, {"n": ns, "q": qs}, [fn(n, q) for n in ns for q in qs])


def cmd_verify(args) -> int:
    report = _run_check(args)
    if args.text:
        lines = [report.summary()]
        lines += [f"  witness: {json.dumps(w, sort_keys=True)}" for w in report.witnesses]
        text = "\n".join(lines) + "\n"
    else:
        text = report.to_json() + "\n"
    _emit(text, args.out)
    return EXIT_PASS if report.passed else EXIT_FAIL


# -- parser --------------------------------------------------------------------

def _model_args(p, require_model=True):
    p.add_argument("--model", required=require_model, help="wonderful or proj_matrices")
    p.add_argument("--type", help="Cartan type for wonderful, e.g. A2")
    p.add_argument("--n", type=int, help="matrix size for proj_matrices")
    p.add_argument("--out", help="write output to this file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gstrata", description=__doc__.split("\n\n")[0].strip())
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("strata", help="enumerate stratum index tuples")
    _model_args(p)
    p.add_argument("--format", choices=("json", "text", "dot"), default="json")
    p.add_argument("--dot", action="store_true", help="emit the orbit closure order as DOT")
    p.add_argument("--nonempty", action="store_true",
                   help="drop tuples known to be empty (orbits with K empty only)")
    p.set_defaults(func=cmd_strata)

    p = sub.add_parser("canon", help="canonical form of a cell index")
    _model_args(p)
    p.add_argument("--orbit", required=True, help="orbit name, or rank r for proj_matrices")
    p.add_argument("--u", default="e")
    p.add_argument("--v", default="e")
    p.add_argument("--side", choices=(STANDARD, OPPOSITE), default=STANDARD)
    p.add_argument("--format", choices=("json", "text"), default="text")
    p.set_defaults(func=cmd_canon)

    p = sub.add_parser("model", help="export a built-in orbit model")
    _model_args(p)
    p.add_argument("--format", choices=("json", "dot"), default="json")
    p.set_defaults(func=cmd_model)

    p = sub.add_parser("verify", help="run a finite-field verification")
    p.add_argument("check", choices=CHECKS)
    p.add_argument("--q", help="comma-separated primes")
    p.add_argument("--n", type=int)
    p.add_argument("--parabolic", help="simple roots of P for kls, e.g. a1 or a1,a2")
    p.add_argument("--sub", help="simple roots of the smaller parabolic Q for kls (default empty)")
    p.add_argument("--text", action="store_true", help="human-readable summary")
    p.add_argument("--out", help="write the report to this file")
    p.add_argument("--threads", type=int, default=1,
                   help="worker cap; the verifiers currently run serially")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, GuardError, ModelError, WeylError) as exc:
        print(f"gstrata: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
