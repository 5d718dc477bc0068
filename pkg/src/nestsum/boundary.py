"""Symbolic values at the boundary: words at x = 1 and sums at N = inf.

Divergences are shuffle/stuffle regularized: H_1(1) = 0 for words and
S_1(inf) = sigma0 for sums.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .algebra import _h_diamond, _s_diamond, extract_leading, extract_trailing, stuffle_atoms
from .errors import DomainError
from .expr import SIGMA0, Const, Expr, HSum, HWord, LN2, SSum, as_expr

# multiple zeta values of weight <= 4 in terms of single zetas
_Z = lambda *k: Expr.atom(Const("z", k))  # noqa: E731
ZETA_TABLE = {
    (2, 1): _Z(3),
    (3, 1): _Z(4) * Fraction(1, 4),
    (2, 2): _Z(4) * Fraction(3, 4),
    (2, 1, 1): _Z(4),
}


def zeta_expr(key) -> Expr:
    key = tuple(key)
    if len(key) == 1:
        return _Z(*key)
    if key in ZETA_TABLE:
        return ZETA_TABLE[key]
    return Expr.atom(Const("z", key))


def word_to_zeta_key(letters) -> tuple:
    """Index of an admissible {0,1} word (starts with 0, ends with 1)."""
    if not letters or letters[0] != 0 or letters[-1] != 1 or any(l not in (0, 1) for l in letters):
        raise DomainError(f"not an admissible word: {letters}")
    key, run = [], 0
    for l in letters:
        run += 1
        if l == 1:
            key.append(run)
            run = 0
    return tuple(key)


def zeta_key_to_word(key) -> tuple:
    out = []
    for k in key:
        out.extend([0] * (k - 1) + [1])
    return tuple(out)


@lru_cache(maxsize=None)
def reg_word01_at_one(letters: tuple) -> Expr:
    """Regularized H_letters(1) for a {0,1} word, in zeta values."""
    if any(l not in (0, 1) for l in letters):
        raise DomainError("only words over {0, 1} reduce to zeta values")
    if not letters:
        return Expr.const(1)
    out = Expr()
    for v, j, c in extract_trailing(tuple(letters), 0):
        if j:
            continue  # H_0(1) = 0
        for u, i, d in extract_leading(v, 1):
            if i:
                continue  # regularized H_1(1) = 0
            out = out + (zeta_expr(word_to_zeta_key(u)) if u else Expr.const(1)) * (c * d)
    return out


def words_at_one(e) -> Expr:
    """Replace words of argument x by words at 1, simplifying {0,1} words to zetas."""

    def sub(a):
        if isinstance(a, HWord) and not a.is_constant:
            if all(l in (0, 1) for l in a.letters):
                return reg_word01_at_one(a.letters)
            return Expr.atom(HWord(a.letters, "1"))
        return None

    return as_expr(e).substitute(sub)


def simplify_constants(e) -> Expr:
    """Rewrite words at 1 over {0,1} and z[...] atoms of weight <= 4 as single zetas."""

    def sub(a):
        if isinstance(a, HWord) and a.arg == "1" and all(l in (0, 1) for l in a.letters):
            if a.letters[0] == 1:
                return None
            return reg_word01_at_one(a.letters)
        if isinstance(a, Const) and a.name == "z" and len(a.key) > 1:
            return zeta_expr(a.key)
        return None

    return as_expr(e).substitute(sub)


# --------------------------------------------------------------------------
# sums at infinity
# --------------------------------------------------------------------------


def _blocks(n):
    """Compositions of range(n) into consecutive blocks."""
    if n == 0:
        yield ()
        return
    for first in range(1, n + 1):
        for rest in _blocks(n - first):
            yield (first,) + rest


def nonstrict_to_strict(letters, kind="h") -> list:
    """Non-strict nested sum as a combination of strict ones: merge adjacent levels."""
    diamond = _h_diamond if kind == "h" else _s_diamond
    out = []
    for comp in _blocks(len(letters)):
        pos, merged = 0, []
        for size in comp:
            block = letters[pos : pos + size]
            acc = block[0]
            for b in block[1:]:
                acc = diamond(acc, b)[0][0]
            merged.append(acc)
            pos += size
        out.append((tuple(merged), Fraction(1)))
    return out


def strict_to_words(pairs) -> tuple:
    """Strict sum over (m_i, x_i) -> (coefficient, letters) of a word at 1.

    Uses Li_{m}(x) = prod sign(c_i) * H_{0^{m1-1},c1,...}(1) with c_i = 1/(x1...xi).
    """
    letters, coeff, prod = [], 1, Fraction(1)
    for m, x in pairs:
        prod *= Fraction(x)
        c = 1 / prod
        letters.extend([0] * (m - 1) + [c])
        coeff *= 1 if c > 0 else -1
    return coeff, tuple(letters)


def sum_at_infinity_words(atom) -> Expr:
    """Harmonic or S-sum at infinity as a combination of words at 1."""
    if isinstance(atom, HSum):
        pairs = tuple((abs(a), Fraction(1 if a > 0 else -1)) for a in atom.index)
    elif isinstance(atom, SSum):
        pairs = tuple(zip(atom.exps, atom.weights))
    else:
        raise DomainError("only harmonic and S-sums map to words at 1")
    check_convergent(pairs)
    out = Expr()
    for strict, c in nonstrict_to_strict(pairs, "s"):
        sgn, letters = strict_to_words(strict)
        for l in letters:
            if l != 0 and 0 < l < 1:
                raise DomainError("word letter inside (0, 1): principal values are not supported")
        out = out + Expr.atom(HWord(letters, "1")) * (c * sgn)
    return out


def check_convergent(pairs):
    m1, x1 = pairs[0]
    if abs(x1) > 1:
        raise DomainError(f"divergent sum at infinity: grows like {x1}^N")
    if x1 == 1 and m1 == 1:
        raise DomainError("divergent sum at infinity: logarithmic (sigma0 class)")


@lru_cache(maxsize=None)
def sigma_canonical(index: tuple) -> Expr:
    """Harmonic sum at infinity; leading 1s regularized with S_1(inf) = sigma0."""
    index = tuple(index)
    if not index:
        return Expr.const(1)
    if index == (1,):
        return Expr.atom(SIGMA0)
    if index[0] == 1:
        j = 0
        while j < len(index) and index[j] == 1:
            j += 1
        shorter = index[1:]
        atom = HSum(index, "inf")
        prod = stuffle_atoms(HSum((1,), "inf"), HSum(shorter, "inf"))
        rest = prod - Expr.atom(atom) * j
        out = Expr.atom(SIGMA0) * sigma_canonical(shorter)
        for mon, c in rest.items():
            out = out - sigma_canonical(mon[0].index) * c
        return out / j
    if all(a > 0 for a in index):
        out = Expr()
        for strict, c in nonstrict_to_strict(index, "h"):
            out = out + zeta_expr(strict) * c
        return out
    if len(index) == 1:
        m = -index[0]
        if m == 1:
            return -Expr.atom(LN2)
        return zeta_expr((m,)) * (Fraction(1, 2 ** (m - 1)) - 1)
    return Expr.atom(HSum(index, "inf"))
