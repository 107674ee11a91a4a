"""Command line interface: expand series, emit sector characters, run check
suites, and test single modular transformation laws.

Exit codes: 0 pass, 1 check failure, 2 usage error, 3 convergence or
precondition failure.
"""

from __future__ import annotations

import argparse
import cmath
import json
import sys
from fractions import Fraction

from . import lattice, specfun, verify
from .modgroup import ModularMatrix, SectorPair, mobius
from .series import EvaluationError, PuiseuxSeries, SeriesError

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_CONVERGENCE = 3


def parse_fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc


def parse_complex_pair(text: str) -> complex:
    try:
        re, im = (float(p) for p in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected re,im: {text!r}") from exc
    return complex(re, im)


def parse_int_list(text: str, n: int, what: str) -> list[int]:
    parts = text.split(",")
    if len(parts) != n:
        raise argparse.ArgumentTypeError(f"{what} needs {n} comma-separated integers")
    try:
        return [int(p) for p in parts]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"{what}: non-integer entry in {text!r}") from exc


def build_series(spec_text: str, order: Fraction, twist: str | None = None) -> PuiseuxSeries:
    """Series vocabulary: eta, theta1..4, E<k>, Q<k>[:j,T,l,T1], char:i,j."""
    name, _, arg = spec_text.partition(":")
    if name == "eta":
        return specfun.dedekind_eta(order)
    if name.startswith("theta") and name[5:] in ("1", "2", "3", "4"):
        return specfun.jacobi_theta(int(name[5:]), order)
    if name.startswith("E") and name[1:].isdigit():
        return specfun.eisenstein(int(name[1:]), order)
    if name.startswith("Q") and name[1:].isdigit():
        twist_text = arg or twist
        if not twist_text:
            raise SeriesError(f"{name} needs a twist j,T,l,T1 (--twist or {name}:j,T,l,T1)")
        j, T, l, T1 = parse_int_list(twist_text, 4, "twist")
        return specfun.q_twisted(int(name[1:]), specfun.TwistParams(j, T, l, T1), order)
    if name == "char":
        if not arg:
            raise SeriesError("char needs sector indices, e.g. char:0,1")
        i, j = parse_int_list(arg, 2, "sector pair")
        return lattice.character(SectorPair(2, i, j), order).series
    raise SeriesError(f"unknown series spec {spec_text!r}")


def emit_series(series: PuiseuxSeries, fmt: str, extra: dict | None = None,
                out=None):
    out = out if out is not None else sys.stdout
    if fmt == "json":
        doc = series.to_json_dict()
        if extra:
            doc.update(extra)
        print(json.dumps(doc), file=out)
        return
    for e, c in series.terms():
        print(f"{e}\t{c}", file=out)
    print(f"# O(q^({series.order}))", file=out)


def cmd_expand(args) -> int:
    series = build_series(args.series, args.order, args.twist)
    emit_series(series, args.format)
    return EXIT_PASS


def cmd_char(args) -> int:
    i, j = parse_int_list(args.pair, 2, "--pair")
    data = lattice.character(SectorPair(2, i, j), args.order)
    extra = {"sector": [i, j], "central_charge": str(data.central_charge)}
    emit_series(data.series, args.format, extra)
    return EXIT_PASS


def cmd_check(args) -> int:
    points = tuple(args.tau) if args.tau else None
    reports, status = verify.run_suite(
        args.suite, exact_order=args.order, numeric_order=args.order,
        tol=args.tol, sample_points=points)
    for rep in reports:
        if args.format == "json":
            print(json.dumps(rep.to_json_dict()))
        else:
            print(rep.summary_line())
    return status


def cmd_transform(args) -> int:
    a, b, c, d = parse_int_list(args.gamma, 4, "--gamma")
    gamma = ModularMatrix(a, b, c, d)
    order = args.order if args.order is not None else Fraction(verify.DEFAULT_NUMERIC_ORDER)
    lhs = build_series(args.lhs, order).to_complex()
    rhs = build_series(args.rhs, order).to_complex()
    mult = args.multiplier if args.multiplier is not None else 1.0 + 0j
    spec = verify.TransformSpec(gamma, args.weight, mult, tuple(args.tau), args.tol)
    rep = verify.check_transform_numeric(
        f"transform-{args.lhs}-gamma{gamma.entries()}-{args.rhs}", lhs, rhs, spec)
    if args.format == "json":
        print(json.dumps(rep.to_json_dict()))
    else:
        print(rep.summary_line())
    return EXIT_PASS if rep.passed else EXIT_FAIL


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qmodver",
        description="Exact q-series expansion and modular identity verification")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("expand", help="print the q-expansion of a named series")
    p.add_argument("--series", required=True,
                   help="eta | theta1..theta4 | E<k> | Q<k>")
    p.add_argument("--twist", help="j,T,l,T1 for Q<k>")
    p.add_argument("--order", type=parse_fraction, default=Fraction(20),
                   help="truncation order NUM[/DEN]")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("char", help="supertrace character of a Z_2 sector pair")
    p.add_argument("--pair", required=True, help="sector exponents i,j")
    p.add_argument("--order", type=parse_fraction, default=Fraction(20))
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_char)

    p = sub.add_parser("check", help="run a verification suite")
    p.add_argument("--suite", required=True, choices=verify.SUITE_NAMES)
    p.add_argument("--order", type=parse_fraction, default=None,
                   help="override the per-check build order")
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--tau", type=parse_complex_pair, action="append",
                   help="sample point re,im (repeatable)")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("transform", help="test f(gamma tau) = mult (c tau+d)^w g(tau)")
    p.add_argument("--gamma", required=True, help="matrix entries a,b,c,d")
    p.add_argument("--weight", type=parse_fraction, default=Fraction(0))
    p.add_argument("--multiplier", type=parse_complex_pair, default=None)
    p.add_argument("--lhs", required=True, help="series spec for f")
    p.add_argument("--rhs", required=True, help="series spec for g")
    p.add_argument("--tau", type=parse_complex_pair, action="append", required=True)
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--order", type=parse_fraction, default=None)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_transform)
    return parser


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except EvaluationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONVERGENCE
    except (SeriesError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
