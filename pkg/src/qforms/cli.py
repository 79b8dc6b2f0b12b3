"""Command-line interface: check suites, expression evaluation, tables,
witnesses.

Exit codes: 0 all checks passed, 1 at least one check failed or errored,
2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .checks import CHECK_NAMES, SuiteConfig, load_suite_bundle, run_suite
from .duality import exactness_witness, surjectivity_witness
from .grammar import format_value, parse_expr
from .integrals import nabla
from .presets import build_preset


def _add_context_args(p, with_file=True):
    p.add_argument("--preset", choices=("eq2", "cq"),
                   help="built-in presentation to work with")
    if with_file:
        p.add_argument("--file", help="presentation JSON file")


def build_arg_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qforms",
        description="Exact verification engine for q-commutation algebras, "
                    "their differential calculi and integral forms.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_check = sub.add_parser("check", help="run the verification suite")
    _add_context_args(p_check)
    p_check.add_argument("--suite", default="all",
                         help="'all' or a comma-separated list of check names")
    p_check.add_argument("--seed", type=int, default=7)
    p_check.add_argument("--trials", type=int, default=100,
                         help="random trials per randomized check")
    p_check.add_argument("--max-exp", type=int, default=3,
                         help="exponent bound for random monomials")
    p_check.add_argument("--numeric", metavar="P/Q",
                         help="additionally re-run every check with q "
                              "specialized to the given rational")
    p_check.add_argument("--json", action="store_true", dest="as_json")
    p_check.add_argument("--list", action="store_true",
                         help="list available check names and exit")

    p_eval = sub.add_parser("eval", help="evaluate an expression")
    _add_context_args(p_eval)
    p_eval.add_argument("expression")
    p_eval.add_argument("--numeric", metavar="P/Q",
                        help="evaluate over exact rationals at the given q")

    p_table = sub.add_parser("table", help="print the skeletal multiplication table")
    _add_context_args(p_table, with_file=False)
    p_table.add_argument("--json", action="store_true", dest="as_json")

    p_wit = sub.add_parser("witness", help="print and verify a witness")
    p_wit.add_argument("kind", choices=("surjectivity", "exactness"))
    _add_context_args(p_wit, with_file=False)
    p_wit.add_argument("k", type=int)
    p_wit.add_argument("l", type=int)
    p_wit.add_argument("m", type=int)
    return parser


def _parse_rational(text: str) -> Fraction:
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise SystemExit(f"qforms: invalid rational {text!r}: {exc}")
    if value == 0:
        raise SystemExit("qforms: q cannot be specialized to 0")
    return value


def _cmd_check(args) -> int:
    if args.list:
        for name in CHECK_NAMES:
            print(name)
        return 0
    suite = None if args.suite == "all" else tuple(
        s.strip() for s in args.suite.split(",") if s.strip())
    cfg = SuiteConfig(
        preset=args.preset or ("eq2" if not args.file else None),
        file=args.file, suite=suite, seed=args.seed, trials=args.trials,
        max_exp=args.max_exp,
        numeric=_parse_rational(args.numeric) if args.numeric else None,
        output_json=args.as_json)
    try:
        results = run_suite(cfg)
    except ValueError as exc:
        print(f"qforms: {exc}", file=sys.stderr)
        return 2
    if args.as_json:
        print(json.dumps([r.to_dict() for r in results], indent=2))
    else:
        for r in results:
            print(r.line())
        passed = sum(1 for r in results if r.status == "pass")
        print(f"-- {passed}/{len(results)} checks passed")
    return 0 if all(r.status == "pass" for r in results) else 1


def _load_context(args):
    if getattr(args, "file", None):
        from .config import load_bundle
        from .scalars import RationalScalars, SYMBOLIC
        field = RationalScalars(_parse_rational(args.numeric)) \
            if getattr(args, "numeric", None) else SYMBOLIC
        return load_bundle(args.file, field)
    from .scalars import RationalScalars, SYMBOLIC
    field = RationalScalars(_parse_rational(args.numeric)) \
        if getattr(args, "numeric", None) else SYMBOLIC
    return build_preset(args.preset or "eq2", field)


def _cmd_eval(args) -> int:
    bundle = _load_context(args)
    try:
        value = parse_expr(args.expression, bundle)
    except ValueError as exc:
        print(f"qforms: {exc}", file=sys.stderr)
        return 2
    print(format_value(value, bundle.dual_names))
    return 0


def _cmd_table(args) -> int:
    bundle = build_preset(args.preset or "eq2")
    if bundle.skeletal_names is None:
        print("qforms: no skeletal table for this preset", file=sys.stderr)
        return 2
    names = [name for name, _ in bundle.skeletal_names]
    table = bundle.duality.skeletal_table(bundle.skeletal_names)

    def show(entry):
        if entry is None:
            return "0"
        s, nm = entry
        return nm if s == bundle.field.one else f"({format_value(s)})*{nm}"

    if args.as_json:
        payload = {"basis": names,
                   "rows": [[show(e) for e in row] for row in table]}
        print(json.dumps(payload, indent=2))
        return 0
    cells = [[""] + names] + [[names[r]] + [show(e) for e in row]
                              for r, row in enumerate(table)]
    widths = [max(len(row[c]) for row in cells) for c in range(len(cells[0]))]
    for row in cells:
        print("  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip())
    return 0


def _cmd_witness(args) -> int:
    bundle = build_preset(args.preset or "eq2")
    if bundle.name != "eq2":
        print("qforms: witnesses are generated for the eq2 preset", file=sys.stderr)
        return 2
    fmt = lambda x: format_value(x, bundle.dual_names)  # noqa: E731
    if args.kind == "surjectivity":
        f, target = surjectivity_witness(bundle, args.k, args.l, args.m)
        got = nabla(f)
        print(f"preimage: {fmt(f)}")
        print(f"nabla(preimage) = {fmt(got)}")
        print(f"target          = {fmt(target)}")
        print("VERIFIED" if got == target else "MISMATCH")
        return 0 if got == target else 1
    try:
        u, target = exactness_witness(bundle, args.k, args.l, args.m)
    except ValueError as exc:
        print(f"qforms: {exc}", file=sys.stderr)
        return 2
    du = bundle.calculus.d(u)
    print(f"primitive: {fmt(u)}")
    print(f"d(primitive) = {fmt(du)}")
    print(f"target       = {fmt(target)}")
    print("VERIFIED" if du == target else "MISMATCH")
    return 0 if du == target else 1


def main(argv=None) -> int:
    parser = build_arg_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    handlers = {"check": _cmd_check, "eval": _cmd_eval,
                "table": _cmd_table, "witness": _cmd_witness}
    try:
        return handlers[args.command](args)
    except SystemExit as exc:
        if isinstance(exc.code, str):
            print(exc.code, file=sys.stderr)
            return 2
        return exc.code or 0


if __name__ == "__main__":
    sys.exit(main())
