"""Named constants evaluated from their defining series."""
from __future__ import annotations

import math
from functools import lru_cache

import mpmath
from mpmath import mp

from ..errors import DomainError
from ..expr import Const
from .precision import as_precision


def power_tail(a: int, M, dps: int):
    """sum_{k > M} k^(-a) for a >= 2 by Euler-Maclaurin (M large, may be complex)."""
    M = mpmath.mpmathify(M)
    eps = mpmath.mpf(10) ** (-dps - 2)
    total = M ** (1 - a) / (a - 1) - M ** (-a) / 2
    rising = mpmath.mpf(a)  # (a)_{2j-1}
    for j in range(1, 200):
        if j > 1:
            rising *= (a + 2 * j - 3) * (a + 2 * j - 2)
        term = mpmath.bernoulli(2 * j) * rising / mpmath.factorial(2 * j) * M ** (1 - a - 2 * j)
        total += term
        if abs(term) < eps * abs(total):
            return total
    raise DomainError("Euler-Maclaurin tail did not converge")


def harmonic_asymptotic(M, dps: int):
    """S_1(M) = psi(M+1) + gamma by its asymptotic series (M large)."""
    M = mpmath.mpmathify(M)
    eps = mpmath.mpf(10) ** (-dps - 2)
    total = mpmath.log(M) + mpmath.euler + 1 / (2 * M)
    for j in range(1, 200):
        term = mpmath.bernoulli(2 * j) / (2 * j) * M ** (-2 * j)
        total -= term
        if abs(term) < eps:
            return total
    raise DomainError("asymptotic series did not converge")


def zeta_single(k: int, dps: int):
    if k < 2:
        raise DomainError("zeta(k) needs k >= 2")
    M = max(20, dps)
    head = mpmath.fsum(mpmath.mpf(n) ** (-k) for n in range(1, M + 1))
    return head + power_tail(k, M, dps)


def li_half(k: int, dps: int):
    """Li_k(1/2) = sum 1/(2^n n^k)."""
    n_terms = int((dps + 5) * math.log2(10)) + 10
    return mpmath.fsum(mpmath.ldexp(mpmath.mpf(1), -n) / mpmath.mpf(n) ** k for n in range(1, n_terms))


def catalan_cvz(dps: int):
    """Catalan's constant by Cohen-Villegas-Zagier acceleration of sum (-1)^k/(2k+1)^2."""
    n = int(1.31 * dps) + 8
    d = (3 + mpmath.sqrt(8)) ** n
    d = (d + 1 / d) / 2
    b, c, s = mpmath.mpf(-1), -d, mpmath.mpf(0)
    for k in range(n):
        c = b - c
        s += c / mpmath.mpf(2 * k + 1) ** 2
        b = (k + n) * (k - n) * b / ((k + mpmath.mpf(1) / 2) * (k + 1))
    return s / d


def zeta_word(key) -> tuple:
    """Letters of the word at 1 representing the multiple zeta value z[key]."""
    letters = []
    for k in key:
        letters.extend([0] * (k - 1) + [1])
    return tuple(letters)


@lru_cache(maxsize=1024)
def _const_value(c: Const, dps: int):
    with mp.workdps(dps):
        if c.name == "z":
            if len(c.key) == 1:
                return zeta_single(c.key[0], dps)
            from .words import eval_word

            return eval_word(zeta_word(c.key), 1, max(1, dps - 10))
        if c.name == "ln2":
            return li_half(1, dps)
        if c.name == "li":
            return li_half(c.key[0], dps)
        if c.name == "catalan":
            return catalan_cvz(dps)
        if c.name == "pi":
            return +mpmath.pi
        raise DomainError("sigma0 marks the divergent S_1(inf) and has no value")


def eval_constant(c: Const, prec=None):
    """Value of a named constant; sigma0 raises DomainError."""
    p = as_precision(prec)
    if c.name == "z" and len(c.key) > 1:
        # word route runs at its own guard digits
        with mp.workdps(p.work):
            from .words import eval_word

            return eval_word(zeta_word(c.key), 1, p)
    with mp.workdps(p.work):
        return +_const_value(c, p.work)
