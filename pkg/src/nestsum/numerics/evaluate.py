"""Numeric value of a whole expression."""
from __future__ import annotations

import re
from fractions import Fraction

import mpmath
from mpmath import mp

from ..errors import DomainError
from ..expr import Const, CSum, Expr, HSum, HWord, SSum, as_expr
from .constants import eval_constant
from .precision import as_precision
from .sums import eval_sum_complex, eval_sum_exact
from .words import _to_mp, eval_word

_KBOUND = re.compile(r"^(\d*)([A-Za-z]\w*)$")


def _bound(bound: str, env):
    m = _KBOUND.match(bound)
    if not m or m.group(2) not in env:
        raise DomainError(f"no value given for bound {bound!r}")
    return (int(m.group(1)) if m.group(1) else 1) * env[m.group(2)]


def _is_int(v):
    v = _to_mp(v)
    return mpmath.im(v) == 0 and mpmath.re(v) == int(mpmath.re(v)) and mpmath.re(v) >= 0


def _word_arg(arg: str, env):
    if arg in env:
        return env[arg]
    try:
        return Fraction(arg)
    except ValueError:
        raise DomainError(f"no value given for word argument {arg!r}") from None


def _csum_inf(atom: CSum, p):
    if atom.depth != 1:
        raise DomainError("cyclotomic sums at infinity are evaluated for depth 1 only")
    (a, b, c), s = atom.triples[0], atom.signs[0]
    if s == 1 and c == 1:
        raise DomainError("divergent cyclotomic sum at infinity")
    return mpmath.nsum(lambda k: mpmath.mpf(s) ** k / (a * k + b) ** c, [1, mpmath.inf])


def eval_atom(a, env=None, prec=None, parity=None):
    env = env or {}
    p = as_precision(prec)
    with mp.workdps(p.work):
        if isinstance(a, Const):
            return eval_constant(a, p)
        if isinstance(a, HWord):
            return eval_word(a.letters, _word_arg(a.arg, env), p)
        if isinstance(a, (HSum, SSum, CSum)):
            if a.bound == "inf":
                if isinstance(a, CSum):
                    return _csum_inf(a, p)
                from ..boundary import sum_at_infinity_words

                return eval_expr(sum_at_infinity_words(a), env, p)
            n = _bound(a.bound, env)
            if _is_int(n):
                q = eval_sum_exact(a, int(mpmath.re(n)))
                return mpmath.mpf(q.numerator) / q.denominator
            if isinstance(a, HSum):
                return eval_sum_complex(a.index, n, p, parity)
            raise DomainError("S-sums and cyclotomic sums are evaluated at integer N only")
    raise DomainError(f"cannot evaluate {a!r}")


def eval_expr(e, env=None, prec=None, parity=None):
    """Value of ``e`` with symbols (N, x, ...) taken from ``env``."""
    p = as_precision(prec)
    e = as_expr(e)
    cache = {}
    with mp.workdps(p.work):
        total = mpmath.mpf(0)
        for mon, c in e.items():
            term = mpmath.mpf(c.numerator) / c.denominator
            for a in mon:
                if a not in cache:
                    cache[a] = eval_atom(a, env, p, parity)
                term *= cache[a]
            total += term
    return total
