"""Exact linear solves over Q by fraction-free (Bareiss) elimination."""
from __future__ import annotations

from fractions import Fraction
from math import lcm

from .errors import DomainError


def _integerize(row):
    den = 1
    for q in row:
        den = lcm(den, Fraction(q).denominator)
    return [int(Fraction(q) * den) for q in row]


def bareiss_solve(A, B):
    """Solve A X = B for square, nonsingular A.

    ``A`` is a list of n rows of rationals, ``B`` a list of n rows of m
    rationals.  Returns X as a list of n rows of Fractions.  Rows are scaled
    to integers first, so every intermediate division is exact.
    """
    n = len(A)
    if any(len(r) != n for r in A) or len(B) != n:
        raise DomainError("bareiss_solve needs a square system")
    m = len(B[0]) if n else 0
    M = [_integerize(list(A[i]) + list(B[i])) for i in range(n)]
    prev = 1
    for k in range(n):
        piv = next((i for i in range(k, n) if M[i][k] != 0), None)
        if piv is None:
            raise DomainError("singular system")
        if piv != k:
            M[k], M[piv] = M[piv], M[k]
        mk = M[k]
        akk = mk[k]
        for i in range(k + 1, n):
            mi = M[i]
            aik = mi[k]
            for j in range(k + 1, n + m):
                mi[j] = (akk * mi[j] - aik * mk[j]) // prev
            mi[k] = 0
        prev = akk
    X = [[Fraction(0)] * m for _ in range(n)]
    for i in range(n - 1, -1, -1):
        row = M[i]
        for c in range(m):
            acc = Fraction(row[n + c])
            for j in range(i + 1, n):
                if row[j]:
                    acc -= row[j] * X[j][c]
            X[i][c] = acc / row[i]
    return X


def determinant(A) -> Fraction:
    """Exact determinant via Bareiss; mainly a test helper."""
    n = len(A)
    if n == 0:
        return Fraction(1)
    den = 1
    M = []
    for r in A:
        d = 1
        for q in r:
            d = lcm(d, Fraction(q).denominator)
        den *= d
        M.append([int(Fraction(q) * d) for q in r])
    sign, prev = 1, 1
    for k in range(n - 1):
        piv = next((i for i in range(k, n) if M[i][k] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            M[k], M[piv] = M[piv], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[k][k] * M[i][j] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return Fraction(sign * M[n - 1][n - 1], den)
