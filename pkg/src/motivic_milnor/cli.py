"""Command line interface: ``motivic-milnor <command> ...``.

Exit codes: 0 ok, 1 verification failure, 2 usage or syntax error,
3 internal assertion.
"""

from __future__ import annotations

import argparse
import sys
import time

from .coefficients import EvalProfile
from .dual import simplify_tau, tree_expand
from .errors import IndexOverCap, MotivicError, NegativeExponent, NotExterior, TableError
from .expr import Basis, Coef, ParseError, eval_text, parse, render
from .matrices import coproduct_mono_closed
from .dual import coproduct_mono_bruteforce
from .sequences import format_seq
from .table import constants_table, load_table, save_table
from .verify import SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3

NOTATION = """\
notation: Q(e0,e1,...) lists tau-exponents from index 0, so Q(1) is Q_0 and
Q(0,1) is Q_1; "Q 2" is shorthand for Q_2.  P(r1,r2,...) lists xi-exponents
from index 1 (xi_0 = 1 has no slot).  "Q(1) P(2)" is the basis element
Q(E)P(R); use "*" to multiply, e.g. "Q(1) * P(2)".  A tau-power between two
factors is moved across the left one: "Q(1) tau Q(1)" = rho Q(1).
"""


class UsageError(Exception):
    pass


def _parse_seq(text: str) -> tuple:
    body = text.strip()
    if body.startswith("(") and body.endswith(")"):
        body = body[1:-1]
    if not body:
        return ()
    try:
        parts = [int(p) for p in body.replace(" ", "").split(",")]
    except ValueError:
        raise UsageError(f"expected a comma-separated list of naturals, got {text!r}") from None
    if any(p < 0 for p in parts):
        raise UsageError("sequence entries must be nonnegative")
    return tuple(parts)


def _single_basis(text: str) -> tuple:
    expr = parse(text)
    if len(expr.terms) != 1 or len(expr.terms[0]) != 1 or not isinstance(expr.terms[0][0], Basis):
        factors = expr.terms[0] if len(expr.terms) == 1 else ()
        if len(factors) == 1 and isinstance(factors[0], Coef) and factors[0] == Coef():
            return ((), ())
        raise UsageError("expected a single basis element such as 'Q(1) P(2)'")
    f = expr.terms[0][0]
    return (f.e, f.r)


def cmd_mul(args) -> int:
    profile = EvalProfile.parse(args.profile)
    result = eval_text(args.expr, profile)
    print(render(result, args.format))
    if args.oracle:
        check = eval_text(args.expr, profile, oracle=True)
        if check != result:
            print(f"oracle disagrees: {render(check, args.format)}", file=sys.stderr)
            return EXIT_FAIL
        print("oracle: agrees", file=sys.stderr)
    return EXIT_OK


def cmd_simplify(args) -> int:
    s = _parse_seq(args.seq)
    if args.tree:
        leaves = tree_expand(s)
        for (e, r), k in sorted(leaves.items()):
            print(f"{format_seq(e)}|{format_seq(r)} {k}")
    else:
        print(simplify_tau(s))
    return EXIT_OK


def cmd_coproduct(args) -> int:
    e, r = _single_basis(args.basis)
    closed = coproduct_mono_closed(e, r)
    print(closed)
    if args.brute:
        brute = coproduct_mono_bruteforce((e, r))
        if brute != closed:
            print(f"brute force disagrees: {brute}", file=sys.stderr)
            return EXIT_FAIL
        print("brute force: agrees", file=sys.stderr)
    return EXIT_OK


def cmd_constants(args) -> int:
    table = constants_table(args.max_degree)
    save_table(table, args.out)
    print(f"wrote {len(table)} products (max degree {args.max_degree}) to {args.out}")
    return EXIT_OK


def cmd_check(args) -> int:
    try:
        table = load_table(args.file, spot_check=args.fraction)
    except TableError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL
    print(f"ok: {len(table)} products, max degree {table.max_p}")
    return EXIT_OK


def cmd_verify(args) -> int:
    ok = True
    start = time.perf_counter()
    for result in run_suite(args.suite, args.max_degree):
        print(result.line(), flush=True)
        ok &= result.passed
    print(f"{'all checks passed' if ok else 'FAILURES'} in {time.perf_counter() - start:.1f}s")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_repl(args) -> int:
    profile = EvalProfile.parse(args.profile)
    fmt = args.format
    interactive = sys.stdin.isatty()
    while True:
        try:
            line = input("> " if interactive else "")
        except EOFError:
            break
        line = line.strip()
        if not line:
            continue
        if line.startswith(":"):
            cmd, _, arg = line[1:].partition(" ")
            if cmd in ("quit", "q"):
                break
            try:
                if cmd == "profile":
                    profile = EvalProfile.parse(arg)
                elif cmd == "format":
                    if arg not in ("text", "json", "latex"):
                        raise ValueError(f"unknown format {arg!r}")
                    fmt = arg
                elif cmd == "help":
                    print(NOTATION, end="")
                else:
                    raise ValueError(f"unknown directive :{cmd}")
            except ValueError as exc:
                print(f"error: {exc}")
            continue
        try:
            print(render(eval_text(line, profile), fmt))
        except (ParseError, MotivicError, ValueError) as exc:
            print(f"error: {exc}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="motivic-milnor",
        description="Products in the conjugated motivic Milnor basis over F2[tau, rho].",
        epilog=NOTATION,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mul", help="evaluate and print an expression")
    p.add_argument("expr")
    p.add_argument("--format", choices=("text", "json", "latex"), default="text")
    p.add_argument("--profile", choices=("generic", "rho-zero", "classical"), default="generic")
    p.add_argument("--oracle", action="store_true", help="recompute with the pairing oracle and diff")
    p.set_defaults(func=cmd_mul)

    p = sub.add_parser("simplify", help="expand tau(S) = tau_0^s0 tau_1^s1 ... in the basis")
    p.add_argument("seq", help='exponents, e.g. "2,1"')
    p.add_argument("--tree", action="store_true", help="print rewriting-tree leaves with counts")
    p.set_defaults(func=cmd_simplify)

    p = sub.add_parser("coproduct", help="coproduct of the dual monomial tau(E) xi(R)")
    p.add_argument("basis", help='basis in Q/P notation, e.g. "Q(1) P(2)"')
    p.add_argument("--brute", action="store_true", help="diff against the brute-force coproduct")
    p.set_defaults(func=cmd_coproduct)

    p = sub.add_parser("constants", help="build and save a structure-constant table")
    p.add_argument("--max-degree", type=int, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_constants)

    p = sub.add_parser("check", help="load a table and spot-check it")
    p.add_argument("file")
    p.add_argument("--fraction", type=float, default=0.01)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("verify", help="run invariant suites")
    p.add_argument("--suite", choices=("all",) + SUITES, default="all")
    p.add_argument("--max-degree", type=int, default=12)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("repl", help="interactive evaluation (:quit, :profile, :format)")
    p.add_argument("--format", choices=("text", "json", "latex"), default="text")
    p.add_argument("--profile", choices=("generic", "rho-zero", "classical"), default="generic")
    p.set_defaults(func=cmd_repl)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return args.func(args)
    except (NegativeExponent, AssertionError) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (ParseError, UsageError, IndexOverCap, NotExterior, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except MotivicError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
