"""Command-line front-end ``nestsum``."""
from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction

import mpmath

from . import algebra, mzv, relations
from .errors import DomainError, NestsumError, ParseError
from .expr import CSum, Expr, HSum, HWord, SSum
from .grammar import format_expr, parse, parse_atom, to_json_obj
from .numerics.evaluate import eval_expr
from .numerics.mellin import Contour, inverse_mellin, mellin_quad
from .numerics.precision import as_precision
from .numerics.sums import eval_expr_exact


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise ParseError(f"usage: {message}")


def _emit(args, text, obj):
    if args.json:
        print(json.dumps(obj, sort_keys=True))
    else:
        print(text)


def _expr_out(args, e: Expr):
    _emit(args, format_expr(e), {"expr": format_expr(e), "terms": to_json_obj(e)})


def _single_atom(text):
    a = parse_atom(text)
    return a


def _num_text(v, digits):
    return mpmath.nstr(v, digits, strip_zeros=False) if digits else str(v)


# --------------------------------------------------------------------------
# verbs
# --------------------------------------------------------------------------


def cmd_product(args):
    a, b = parse(args.left), parse(args.right)
    has_sums = any(isinstance(x, (HSum, SSum, CSum)) for x in a.atoms() | b.atoms())
    if args.kind == "shuffle" or (args.kind == "auto" and not has_sums):
        out = algebra.shuffle_product(a, b)
    else:
        out = algebra.expand_products(a * b)
    if args.verify:
        rng = random.Random(args.seed)
        for _ in range(args.verify):
            n = rng.randint(1, 20)
            if eval_expr_exact(out, n) != eval_expr_exact(a, n) * eval_expr_exact(b, n):
                raise NestsumError(f"product check failed at N={n}")
    _expr_out(args, out)


def cmd_reduce(args):
    _expr_out(args, algebra.reduce_to_basis(parse(args.expr), args.wmax))


def _letter_list(text):
    return [int(t) for t in text.split(",") if t.strip()]


def cmd_lyndon(args):
    if args.counts:
        counts = {}
        for part in args.counts.split(","):
            letter, c = part.split(":")
            counts[int(letter)] = int(c)
        words = algebra.lyndon_words_multiset(counts)
    else:
        words = algebra.lyndon_words(_letter_list(args.alphabet), args.w)
    lines = ["[" + ",".join(str(l) for l in w) + "]" for w in words]
    _emit(args, "\n".join(lines + [f"count: {len(words)}"]), {"words": [list(w) for w in words], "count": len(words)})


def cmd_count(args):
    v = algebra.counting_catalog(args.family, args.w, args.n, args.variant)
    _emit(args, str(v), {"family": args.family, "w": args.w, "variant": args.variant, "value": int(v)})


def cmd_dup(args):
    a = _single_atom(args.expr)
    if isinstance(a, HSum) and all(i > 0 for i in a.index):
        e = relations.duplicate_hsum(a)
        _emit(args, format_expr(e), {"rhs": to_json_obj(e), "expr": format_expr(e)})
        return
    lhs, rhs = relations.duplicate_ssum(a)
    _emit(
        args,
        f"{format_expr(lhs)} = {format_expr(rhs)}",
        {"lhs": to_json_obj(lhs), "rhs": to_json_obj(rhs), "expr": f"{format_expr(lhs)} = {format_expr(rhs)}"},
    )


def cmd_transform(args):
    if args.kind == "table":
        entries = relations.transform_table(args.table)
        lines, objs = [], []
        for t in entries:
            word = "H[" + ",".join(str(l) for l in t.word) + "]"
            line = f"{word}({t.kind}) = {format_expr(t.real_expr)}"
            if t.imag != "0":
                line += f" + i*({format_expr(t.imag_expr)})"
            lines.append(line)
            objs.append({"kind": t.kind, "word": list(t.word), "real": format_expr(t.real_expr), "imag": format_expr(t.imag_expr)})
        _emit(args, "\n".join(lines), {"entries": objs})
        return
    if args.expr is None:
        raise DomainError("transform needs an expression")
    e = parse(args.expr)
    out = relations.apply_minus_x(e) if args.kind == "minusx" else relations.apply_one_minus_x(e)
    _expr_out(args, out)


def cmd_diffN(args):
    e = parse(args.expr)
    for _ in range(args.order):
        e = relations.diff_N_expr(e)
    _expr_out(args, e)


def cmd_mellin(args):
    mf = relations.to_mellin(parse(args.expr))
    if args.split:
        mf = mf.split()
    if args.at is not None:
        p = as_precision(args.prec)
        v, err = mellin_quad(relations.to_mellin(parse(args.expr)), _parse_number(args.at), None, p, _parity(args))
        _emit(args, _num_text(v, p.target), {"value": str(v), "error": str(err)})
        return
    _emit(args, mf.to_text(), mf.to_json_obj())


def _parse_number(text):
    text = text.strip().replace(" ", "")
    try:
        return int(text)
    except ValueError:
        pass
    try:
        return Fraction(text)
    except ValueError:
        pass
    try:
        v = complex(text.replace("i", "j"))
    except ValueError:
        raise DomainError(f"not a number: {text!r}") from None
    return mpmath.mpc(v.real, v.imag) if v.imag else mpmath.mpf(v.real)


def _parity(args):
    return {"even": 1, "odd": -1, None: None}[getattr(args, "parity", None)]


def _contour(text):
    if not text:
        return Contour()
    parts = [float(t) for t in text.split(",")]
    c = Contour(*parts[:3]) if len(parts) >= 3 else Contour(*parts)
    return c


def cmd_invmellin(args):
    import sympy

    N = sympy.Symbol("N")
    try:
        M = sympy.lambdify(N, sympy.sympify(args.transform, locals={"N": N}), "mpmath")
    except (sympy.SympifyError, SyntaxError, TypeError) as exc:
        raise DomainError(f"cannot parse transform {args.transform!r}: {exc}") from None
    p = as_precision(args.prec)
    v, err = inverse_mellin(M, _parse_number(args.at), _contour(args.contour), p)
    _emit(args, _num_text(v, p.target), {"value": str(v), "error": str(err)})


def _bindings(e, at_list):
    env = {}
    free = set()
    for a in e.atoms():
        if isinstance(a, HWord) and not a.is_constant:
            free.add(a.arg)
        if isinstance(a, (HSum, SSum, CSum)) and a.bound != "inf":
            free.add(a.bound.lstrip("0123456789"))
    for item in at_list or []:
        if "=" in item:
            k, v = item.split("=", 1)
            env[k.strip()] = _parse_number(v)
        else:
            if len(free - set(env)) != 1:
                raise DomainError("bare --at value needs exactly one free symbol")
            env[(free - set(env)).pop()] = _parse_number(item)
    missing = free - set(env)
    if missing:
        raise DomainError(f"no value for {', '.join(sorted(missing))}; use --at")
    return env


def cmd_eval(args):
    e = parse(args.expr)
    env = _bindings(e, args.at)
    p = as_precision(args.prec)
    v = eval_expr(e, env, p, _parity(args))
    err = mpmath.mpf(10) ** (-p.target)
    _emit(args, _num_text(v, p.target), {"value": str(v), "error": str(err), "prec": p.target})


def _index_arg(text):
    return tuple(int(t) for t in text.split(",") if t.strip())


def cmd_mzv(args):
    p = as_precision(args.prec)
    if args.mzv_cmd == "value":
        key = _index_arg(args.index)
        v = mzv.zeta_numeric(key, p)
        _emit(args, _num_text(v, p.target), {"index": list(key), "value": str(v)})
        return
    if args.mzv_cmd == "count":
        v = mzv.counting_sequences(args.kind, args.n)
        _emit(args, str(v), {"kind": args.kind, "n": args.n, "value": v})
        return
    th = args.theorem
    if th == "dual":
        rep = mzv.duality_check(args.weight or 5, p).to_json_obj()
    elif th == "sum":
        rep = mzv.sum_theorem_check(args.n, args.k, p).to_json_obj()
    elif th == "derivation":
        rep = mzv.derivation_check(_index_arg(args.index or "2"), p).to_json_obj()
    elif th == "shuffle":
        rep = mzv.check_double_shuffle(args.weight or 5, p).to_json_obj()
    elif th == "nielsen":
        rep = mzv.nielsen_check(p).to_json_obj()
    elif th == "ramanujan":
        entries = mzv.ramanujan_dilog_check(p)
        rep = {"name": "Ramanujan dilogarithm identities", "ok": all(e["ok"] for e in entries), "relations": entries}
    else:
        rows = []
        for fam in mzv.REPEATED_FAMILIES:
            for n in range(1, (args.n or 2) + 1):
                if sum(mzv.repeated_index(fam, n)) > 12:
                    continue
                r = mzv.repeated_argument(fam, n, p)
                rows.append(
                    {
                        "family": fam,
                        "n": n,
                        "implemented": mpmath.nstr(r.implemented, 15),
                        "oracle": mpmath.nstr(r.oracle, 15),
                        "printed": mpmath.nstr(r.printed, 15),
                        "printed_matches": r.printed_matches,
                    }
                )
        rep = {"name": "repeated arguments", "relations": rows}
    print(json.dumps(rep, sort_keys=True, indent=None if args.json else 1))


# --------------------------------------------------------------------------
# parser
# --------------------------------------------------------------------------


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="machine-readable output")
    common.add_argument("--prec", type=int, default=argparse.SUPPRESS, help="target decimal digits")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="seed for randomized checks")

    ap = _Parser(prog="nestsum", description="Nested sums, iterated integrals and multiple zeta values.", parents=[common])
    sub = ap.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    s = sub.add_parser("product", parents=[common], help="stuffle or shuffle product")
    s.add_argument("left")
    s.add_argument("right")
    s.add_argument("--kind", choices=["auto", "stuffle", "shuffle"], default="auto")
    s.add_argument("--verify", type=int, default=0, metavar="K", help="check at K random N")
    s.set_defaults(fn=cmd_product)

    s = sub.add_parser("reduce", parents=[common], help="rewrite in the Lyndon basis")
    s.add_argument("expr")
    s.add_argument("--wmax", type=int, default=4)
    s.set_defaults(fn=cmd_reduce)

    s = sub.add_parser("lyndon", parents=[common], help="list Lyndon words")
    s.add_argument("--alphabet", default="-1,0,1")
    s.add_argument("--w", type=int, default=3)
    s.add_argument("--counts", help="multiset as letter:count,...")
    s.set_defaults(fn=cmd_lyndon)

    s = sub.add_parser("count", parents=[common], help="basis and sum counts")
    s.add_argument("family", choices=algebra.FAMILIES)
    s.add_argument("w", type=int)
    s.add_argument("--n", type=int)
    s.add_argument("--variant", choices=["corrected", "printed"], default="corrected")
    s.set_defaults(fn=cmd_count)

    s = sub.add_parser("dup", parents=[common], help="duplication relation N -> 2N")
    s.add_argument("expr")
    s.set_defaults(fn=cmd_dup)

    s = sub.add_parser("transform", parents=[common], help="argument transformations of words")
    s.add_argument("expr", nargs="?")
    s.add_argument("--kind", choices=["minusx", "oneminusx", "table"], required=True)
    s.add_argument("--table", choices=[t.kind for t in relations.TRANSFORM_TABLE])
    s.set_defaults(fn=cmd_transform)

    s = sub.add_parser("diffN", parents=[common], help="derivative in N")
    s.add_argument("expr")
    s.add_argument("--order", type=int, default=1)
    s.set_defaults(fn=cmd_diffN)

    s = sub.add_parser("mellin", parents=[common], help="Mellin integral representation")
    s.add_argument("expr")
    s.add_argument("--split", action="store_true")
    s.add_argument("--at", help="evaluate the integral at this N")
    s.add_argument("--parity", choices=["even", "odd"])
    s.set_defaults(fn=cmd_mellin)

    s = sub.add_parser("invmellin", parents=[common], help="inverse Mellin transform")
    s.add_argument("transform", help="M(N), e.g. 1/(N+1)")
    s.add_argument("--at", required=True)
    s.add_argument("--contour", help="c,phi[,zmax]")
    s.set_defaults(fn=cmd_invmellin)

    s = sub.add_parser("eval", parents=[common], help="numeric value")
    s.add_argument("expr")
    s.add_argument("--at", action="append", help="value of the free symbol, or name=value")
    s.add_argument("--parity", choices=["even", "odd"])
    s.add_argument("--contour", help="accepted for symmetry; unused")
    s.set_defaults(fn=cmd_eval)

    s = sub.add_parser("mzv", parents=[common], help="multiple zeta values")
    msub = s.add_subparsers(dest="mzv_cmd", required=True, parser_class=_Parser)
    m = msub.add_parser("value", parents=[common])
    m.add_argument("index")
    m = msub.add_parser("check", parents=[common])
    m.add_argument(
        "--theorem", required=True, choices=["dual", "sum", "derivation", "shuffle", "ramanujan", "repeated", "nielsen"]
    )
    m.add_argument("--n", type=int)
    m.add_argument("--k", type=int)
    m.add_argument("--weight", type=int)
    m.add_argument("--index")
    m = msub.add_parser("count", parents=[common])
    m.add_argument("--kind", required=True, choices=mzv.COUNT_KINDS)
    m.add_argument("--n", type=int, required=True)
    s.set_defaults(fn=cmd_mzv)
    return ap


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        for name, default in (("json", False), ("prec", None), ("seed", 0)):
            if not hasattr(args, name):
                setattr(args, name, default)
        if args.verb == "mzv" and args.mzv_cmd == "check" and args.theorem == "sum" and (args.n is None or args.k is None):
            raise DomainError("sum theorem check needs --n and --k")
        args.fn(args)
        return 0
    except NestsumError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
