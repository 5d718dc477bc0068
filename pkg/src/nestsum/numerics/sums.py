"""Nested sums: exact direct summation (the oracle) and complex-N values."""
from __future__ import annotations

import re
from fractions import Fraction

import mpmath
from mpmath import mp

from ..errors import DomainError, ResourceError
from ..expr import CSum, Expr, HSum, SSum, as_expr
from .constants import harmonic_asymptotic, power_tail, zeta_single
from .precision import as_precision
from .words import _to_mp

MAX_SUMMANDS = 10**7
_BOUND = re.compile(r"^(\d*)N$")


def bound_value(bound: str, N: int) -> int:
    """Integer value of a bound symbol such as ``N`` or ``2N``."""
    m = _BOUND.match(bound)
    if not m:
        raise DomainError(f"cannot evaluate bound {bound!r} at an integer N")
    return (int(m.group(1)) if m.group(1) else 1) * N


def _summands(atom):
    """Per-level summand functions k -> Fraction, outermost first."""
    if isinstance(atom, HSum):
        return [
            (lambda a: (lambda k: Fraction((-1 if a < 0 and k % 2 else 1), k ** abs(a))))(a)
            for a in atom.index
        ]
    if isinstance(atom, SSum):
        return [
            (lambda a, x: (lambda k: x**k / k**a))(a, x) for a, x in zip(atom.exps, atom.weights)
        ]
    if isinstance(atom, CSum):
        return [
            (lambda t, s: (lambda k: s**k / Fraction(t[0] * k + t[1]) ** t[2]))(t, s)
            for t, s in zip(atom.triples, atom.signs)
        ]
    raise DomainError(f"not a sum term: {atom!r}")


def eval_sum_exact(atom, N: int) -> Fraction:
    """Exact nested sum with upper limit ``N`` (the bound symbol is ignored).

    Inner sums include the outer index (k_1 >= k_2 >= ... >= 1).
    """
    if isinstance(atom, Expr):
        items = list(atom.items())
        if len(items) != 1 or len(items[0][0]) != 1:
            raise DomainError("eval_sum_exact takes a single sum term")
        atom = items[0][0][0]
    N = int(N)
    if N < 0:
        raise DomainError("upper limit must be >= 0")
    fs = _summands(atom)
    if len(fs) * N > MAX_SUMMANDS:
        raise ResourceError(f"depth*N = {len(fs) * N} exceeds the guard {MAX_SUMMANDS}")
    # cumulative sums from the innermost level outward
    inner = [Fraction(1)] * (N + 1)
    for f in reversed(fs):
        acc = Fraction(0)
        out = [Fraction(0)] * (N + 1)
        for k in range(1, N + 1):
            acc += f(k) * inner[k]
            out[k] = acc
        inner = out
    return inner[N]


def eval_expr_exact(e, N: int) -> Fraction:
    """Exact value of a polynomial in finite sums; bounds like 2N are honoured."""
    e = as_expr(e)
    total = Fraction(0)
    cache = {}
    for mon, c in e.items():
        term = c
        for a in mon:
            if a not in cache:
                if not isinstance(a, (HSum, SSum, CSum)):
                    raise DomainError(f"no exact value for {a!r}")
                cache[a] = eval_sum_exact(a, bound_value(a.bound, N))
            term *= cache[a]
        total += term
    return total


# --------------------------------------------------------------------------
# complex N
# --------------------------------------------------------------------------


def _shift_target(dps):
    return max(30, dps)


def _plain_complex(a: int, N, dps):
    """S_a(N) for a >= 1 at complex N via upward shift and asymptotic tail."""
    shift = 0
    M = N
    target = _shift_target(dps)
    while mpmath.re(M) <= target:
        M = M + 1
        shift += 1
    if a == 1:
        val = harmonic_asymptotic(M, dps)
    else:
        val = zeta_single(a, dps) - power_tail(a, M, dps)
    for j in range(1, shift + 1):
        val -= (N + j) ** (-a)
    return val


def eval_sum_complex(index, N, prec=None, parity: int | None = None):
    """S_index(N) at complex N.

    Depth 1 uses the shift + Euler-Maclaurin route.  Alternating sums need
    ``parity`` = +1 (continuation from even N) or -1 (from odd N); it stands
    for (-1)^N.  Deeper sums up to weight 4 use Mellin quadrature.
    """
    p = as_precision(prec)
    if isinstance(index, HSum):
        index = index.index
    index = tuple(int(a) for a in index)
    if not index:
        return mpmath.mpf(1)
    if any(a < 0 for a in index) and parity not in (1, -1):
        raise DomainError("alternating sums need an explicit parity (+1 even, -1 odd)")
    with mp.workdps(p.work):
        N = _to_mp(N)
        if mpmath.im(N) == 0 and mpmath.re(N) <= -1 and mpmath.re(N) == int(mpmath.re(N)):
            raise DomainError(f"S(N) is singular at N = {N}")
        if len(index) == 1:
            a = index[0]
            if a > 0:
                v = _plain_complex(a, N, p.work)
            else:
                a = -a
                half = (N if parity == 1 else N - 1) / 2
                v = mpmath.mpf(2) ** (1 - a) * _plain_complex(a, half, p.work) - _plain_complex(a, N, p.work)
            return +v
        from .mellin import mellin_sum_value

        return mellin_sum_value(HSum(index), N, p, parity)
