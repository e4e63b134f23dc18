"""Command-line entry point: ``biorder verify | export | bench``.

Exit codes: 0 all requested checks pass, 1 a check failed, 2 bad
configuration, 3 resource budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import export as ex
from .pipeline import AXIOMS, BUDGETS, CHECK_GROUPS, RING_KINDS, ConfigError, RunConfig, cmd_verify, load_subject
from .rings import DEFAULT_MAX_ORDER, ResourceBudgetError

EXIT_PASS, EXIT_FAIL, EXIT_CONFIG, EXIT_BUDGET = 0, 1, 2, 3


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.split(",") if t.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _name_list(text: str) -> tuple[str, ...]:
    return tuple(t.strip().lower() for t in text.split(",") if t.strip())


def _ring_args(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("input")
    g.add_argument("--ring", required=True, choices=RING_KINDS)
    g.add_argument("--n", type=int, help="matrix dimension (gfmatrix)")
    g.add_argument("--q", type=int, help="prime field order (gfmatrix)")
    g.add_argument("--m", type=int, help="modulus (zmod)")
    g.add_argument("--file", help="CSV table (table) or order file (order)")
    g.add_argument("--max-order", type=int, default=DEFAULT_MAX_ORDER,
                   help="refuse rings with more elements than this")
    g.add_argument("--seed", type=int, default=0)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="biorder", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run checks and write a JSON report")
    _ring_args(v)
    v.add_argument("--checks", type=_name_list, default=("all",),
                   help=f"comma list from {', '.join(CHECK_GROUPS)}, or all")
    v.add_argument("--axioms", type=_name_list, default=AXIOMS,
                   help="subset of e1,e2,e2dual,e3")
    v.add_argument("--basis", type=_int_list, help="idempotent indices for the basis check")
    v.add_argument("--budget", choices=BUDGETS, default="auto",
                   help="auto: exhaustive up to 4096 elements, sampled above")
    v.add_argument("--samples", type=int, default=10_000)
    v.add_argument("--out", help="report path (default: stdout)")
    v.add_argument("--timings", action="store_true", help="include elapsed_ms per record")

    e = sub.add_parser("export", help="write JSON or DOT renderings")
    _ring_args(e)
    e.add_argument("--what", required=True, choices=("biorder", "lattice", "graph"))
    e.add_argument("--format", default="json", choices=("json", "dot"))
    e.add_argument("--side", default="left", choices=("left", "right"))
    e.add_argument("--out", help="output path (default: stdout)")

    b = sub.add_parser("bench", help="timing table for one exhaustive pipeline")
    b.add_argument("--n", type=int, default=4)
    b.add_argument("--q", type=int, default=2)
    b.add_argument("--out", help="also write the timings as JSON")
    return parser


def _config(args, **extra) -> RunConfig:
    return RunConfig(ring=args.ring, n=args.n, q=args.q, m=args.m, file=args.file,
                     seed=args.seed, max_order=args.max_order, **extra)


def _emit(text: str, out) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _verify(args) -> int:
    config = _config(args, checks=args.checks, axioms=args.axioms, basis=args.basis,
                     budget=args.budget, samples=args.samples)
    report = cmd_verify(config)
    _emit(report.to_json(timings=args.timings), args.out)
    for rec in report.records:
        print(f"{rec.verdict.upper():4}  {rec.check}", file=sys.stderr)
    return EXIT_PASS if report.passed else EXIT_FAIL


def _export(args) -> int:
    subject = load_subject(_config(args))
    if subject.order is not None:
        if args.what != "lattice":
            raise ConfigError("a raw order can only be exported as a lattice")
        L = subject.order
    elif args.what == "lattice":
        L = subject.left if args.side == "left" else subject.right
    if args.what == "lattice":
        text = ex.dumps(ex.lattice_json(L)) if args.format == "json" else ex.lattice_hasse_dot(L)
    elif args.what == "biorder":
        B = subject.B
        text = ex.dumps(ex.biorder_json(B, subject.c)) if args.format == "json" else ex.omega_hasse_dot(B)
    else:
        from .sequences import distance_table
        T = distance_table(subject.B)
        text = ex.dumps(ex.distances_json(T)) if args.format == "json" else ex.lr_graph_dot(T)
    _emit(text, args.out)
    return EXIT_PASS


def _bench(args) -> int:
    from . import biorder as bo, complement as cm, lattice as la, semigroup as sg
    from .rings import build_matrix_ring
    from .sequences import distance_table

    rows = []

    def stage(name, fn):
        t0 = time.perf_counter()
        value = fn()
        rows.append((name, time.perf_counter() - t0))
        return value

    try:
        ring = stage("ring", lambda: build_matrix_ring(args.n, args.q))
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    S = sg.FiniteSemigroup.from_ring(ring)
    stage("idempotents", lambda: S.idempotents)
    B = stage("biorder", lambda: bo.build_biorder(S))
    c = cm.ComplementMap.from_ring(B, ring)
    stage("zero-product", lambda: bo.check_zero_product_lemma(B))
    stage("E1+E2+duals", lambda: (cm.verify_E1(B), cm.verify_E2(B, c), cm.verify_duals(B, c)))
    stage("E3", lambda: cm.verify_E3(B, c))
    L = stage("quotient lattices", lambda: (la.quotient_lattice(B, "left"),
                                            la.quotient_lattice(B, "right")))
    stage("modular", lambda: la.check_modular(L[0]))
    stage("distances", lambda: distance_table(B))
    print(f"{ring.describe()}: {S.order} elements, {B.k} idempotents")
    print(f"{'stage':<20}{'seconds':>10}")
    for name, sec in rows:
        print(f"{name:<20}{sec:>10.3f}")
    print(f"{'total':<20}{sum(s for _, s in rows):>10.3f}")
    if args.out:
        Path(args.out).write_text(json.dumps({n: round(s, 4) for n, s in rows}, indent=2) + "\n")
    return EXIT_PASS


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handler = {"verify": _verify, "export": _export, "bench": _bench}[args.command]
    try:
        return handler(args)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ResourceBudgetError as exc:
        print(f"resource budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
