"""Command-line front end.

Exit status: 0 on success, 1 when a verification fails, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections.abc import Sequence

from .boxsort import enumerate_owp, owp_weight
from .families import BadParams, FamilyId, UnknownFamily, family
from .grammar import Grammar, GrammarError, NormalOp, derive_n, op_power
from .normalorder import OutOfRange, ckd_power_on_c
from .polyring import Poly, PolyError, format_latex, format_text, parse_poly, to_json
from .suite import CATALOG, UnknownIdentity, reports_to_json, verify, verify_all
from .tableaux import box_index, box_product, enumerate_syt

FORMATS = ("text", "json", "latex")


class UsageError(Exception):
    pass


def _emit_poly(p: Poly, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(to_json(p))
    if fmt == "latex":
        return format_latex(p)
    return format_text(p)


def _emit_op(op: NormalOp, fmt: str) -> str:
    if fmt == "json":
        return json.dumps({"orders": {str(k): to_json(op[k]) for k in op.orders()}})
    if fmt == "latex":
        parts = []
        for k in op.orders():
            d = "" if k == 0 else ("D" if k == 1 else f"D^{{{k}}}")
            parts.append(f"\\left({format_latex(op[k])}\\right){d}")
        return "+".join(parts) if parts else "0"
    return "\n".join(f"D^{k}: {format_text(op[k])}" for k in op.orders()) or "0"


def _poly_arg(text: str, flag: str) -> Poly:
    try:
        return parse_poly(text)
    except PolyError as exc:
        raise UsageError(f"{flag}: {exc}") from None


def _grammar_arg(text: str) -> Grammar:
    try:
        return Grammar.parse(text)
    except PolyError as exc:
        raise UsageError(f"--grammar: {exc}") from None


def _positive(flag: str, value: int, minimum: int = 0) -> int:
    if value < minimum:
        raise UsageError(f"{flag} must be at least {minimum}, got {value}")
    return value


def cmd_family(args) -> int:
    fid = FamilyId.parse(args.name)
    if args.param is not None:
        if fid.params:
            raise UsageError("--param given twice (inline and as a flag)")
        fid = FamilyId(fid.name, tuple(args.param))
    print(_emit_poly(family(fid, args.n), args.format))
    return 0


def cmd_expand(args) -> int:
    g = _grammar_arg(args.grammar)
    word = _poly_arg(args.word, "--word")
    print(_emit_poly(derive_n(g, word, _positive("--times", args.times)), args.format))
    return 0


def cmd_normal_order(args) -> int:
    g = _grammar_arg(args.grammar)
    w = _poly_arg(args.weight, "--weight")
    print(_emit_op(op_power(g, w, _positive("--power", args.power)), args.format))
    return 0


def cmd_jets(args) -> int:
    p = ckd_power_on_c(_positive("--order", args.order, 1), _positive("--n", args.n))
    print(_emit_poly(p, args.format))
    return 0


def cmd_syt(args) -> int:
    n = _positive("--n", args.n, 1)
    m = args.indices
    if m is not None:
        _positive("--indices", m, 1)
    rows = []
    for T in enumerate_syt(n, args.max_cols):
        row: dict = {"tableau": T.text}
        if m is not None:
            row["indices"] = [box_index(T, i, m) for i in range(1, n + 1)]
            row["product"] = box_product(T, m)
        rows.append(row)
    if args.format == "json":
        print(json.dumps(rows))
    else:
        for row in rows:
            extra = f"  {row['indices']}  {row['product']}" if m is not None else ""
            print(row["tableau"] + extra)
    return 0


def cmd_owp(args) -> int:
    n = _positive("--n", args.n, 1)
    m = _positive("--order", args.order, 1)
    items = [(p.text, owp_weight(p)) for p in enumerate_owp(n, m)]
    if args.format == "json":
        print(json.dumps([{"owp": t, "weight": to_json(w)} for t, w in items]))
    else:
        emit = format_latex if args.format == "latex" else format_text
        for t, w in items:
            print(f"{t}  {emit(w)}")
    return 0


def cmd_verify(args) -> int:
    if args.n_max is not None:
        _positive("--n-max", args.n_max, 1)
    if args.identity == "all":
        reports = verify_all(args.n_max)
    else:
        ident = CATALOG.get(args.identity)
        if ident is None:
            raise UnknownIdentity(f"unknown identity {args.identity!r}; known: {', '.join(CATALOG)}")
        lo, hi = ident.n_range
        reports = [verify(ident.token, (lo, min(hi, args.n_max) if args.n_max else hi))]
    if args.format == "json":
        print(reports_to_json(reports))
    else:
        print("\n".join(r.to_text() for r in reports))
        failed = [r.identity for r in reports if not r.passed]
        print("all identities pass" if not failed else f"FAILED: {', '.join(failed)}")
    return 0 if all(r.passed for r in reports) else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default=argparse.SUPPRESS)

    parser = argparse.ArgumentParser(prog="gramtab", description="Grammars, normal ordering, and tableau identities.")
    parser.add_argument("--format", choices=FORMATS, default="text")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("family", parents=[common], help="evaluate a named polynomial family")
    p.add_argument("name", help="family name, optionally with parameters such as kOrder(2)")
    p.add_argument("n", type=int)
    p.add_argument("--param", type=int, action="append", help="family parameter (repeatable)")
    p.set_defaults(run=cmd_family)

    p = sub.add_parser("expand", parents=[common], help="apply a grammar derivation repeatedly")
    p.add_argument("--grammar", required=True, help="rules such as 'a -> a*b; b -> b'")
    p.add_argument("--word", required=True)
    p.add_argument("--times", type=int, required=True)
    p.set_defaults(run=cmd_expand)

    p = sub.add_parser("normal-order", parents=[common], help="normal ordered form of (w D)^n")
    p.add_argument("--grammar", required=True)
    p.add_argument("--weight", required=True)
    p.add_argument("--power", type=int, required=True)
    p.set_defaults(run=cmd_normal_order)

    p = sub.add_parser("jets", parents=[common], help="(c^m D)^n c in jet variables")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(run=cmd_jets)

    p = sub.add_parser("syt", parents=[common], help="list standard Young tableaux")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--max-cols", type=int)
    p.add_argument("--indices", type=int, metavar="M", help="also print order-M box sorting indices")
    p.set_defaults(run=cmd_syt)

    p = sub.add_parser("owp", parents=[common], help="list ordered weak set partitions with weights")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--order", type=int, default=1)
    p.set_defaults(run=cmd_owp)

    p = sub.add_parser("verify", parents=[common], help="check catalog identities")
    p.add_argument("identity", help="identity token, or 'all'")
    p.add_argument("--n-max", type=int)
    p.set_defaults(run=cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.run(args)
    except (UsageError, UnknownFamily, BadParams, UnknownIdentity, OutOfRange, GrammarError, PolyError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"gramtab {args.command}: error: {msg}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
