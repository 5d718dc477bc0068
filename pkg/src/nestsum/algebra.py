"""Products of sums and words, Lyndon words, and basis counting."""
from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from functools import lru_cache
from math import factorial, gcd
from typing import Iterable, Sequence

from sympy import divisors, mobius

from .errors import DomainError
from .expr import (
    SUM_TYPES,
    Const,
    CSum,
    Expr,
    HSum,
    HWord,
    SSum,
    as_expr,
    atom_key,
    letter_key,
    weight,
)
from .linalg import bareiss_solve

# --------------------------------------------------------------------------
# shuffle
# --------------------------------------------------------------------------


@lru_cache(maxsize=None)
def shuffle_letters(a: tuple, b: tuple) -> tuple:
    """All interleavings of ``a`` and ``b`` as ((word, multiplicity), ...)."""
    if not a:
        return ((b, 1),)
    if not b:
        return ((a, 1),)
    acc = defaultdict(int)
    for w, c in shuffle_letters(a[1:], b):
        acc[(a[0],) + w] += c
    for w, c in shuffle_letters(a, b[1:]):
        acc[(b[0],) + w] += c
    return tuple(acc.items())


def _words_to_expr(combo, arg) -> Expr:
    return Expr([(((HWord(w, arg),) if w else ()), c) for w, c in combo])


def shuffle_expand(e) -> Expr:
    """Rewrite products of words sharing an argument as sums of single words."""
    e = as_expr(e)
    out = []
    for mon, c in e.items():
        groups = defaultdict(list)
        rest = []
        for a in mon:
            if isinstance(a, HWord):
                groups[a.arg].append(a)
            else:
                rest.append(a)
        term = Expr.mono(tuple(rest), c)
        for arg, ws in groups.items():
            combo = {ws[0].letters: 1}
            for w in ws[1:]:
                nxt = defaultdict(int)
                for u, k in combo.items():
                    for v, m in shuffle_letters(u, w.letters):
                        nxt[v] += k * m
                combo = nxt
            term = term * _words_to_expr(combo.items(), arg)
        out.extend(term.items())
    return Expr(out)


def shuffle_product(w1, w2) -> Expr:
    """Shuffle product of two words (or linear combinations of words)."""
    e1, e2 = as_expr(w1), as_expr(w2)
    args = {a.arg for a in e1.atoms() | e2.atoms() if isinstance(a, HWord)}
    if len(args) > 1:
        raise DomainError(f"shuffle of words with different arguments: {sorted(args)}")
    return shuffle_expand(e1 * e2)


# --------------------------------------------------------------------------
# extraction of trailing / leading letters
# --------------------------------------------------------------------------


@lru_cache(maxsize=None)
def extract_trailing(word: tuple, z) -> tuple:
    """Write H_word as sum c * H_v * H_z^j with v not ending in the letter z.

    Returns ((v, j, c), ...) using H_{z^m} = H_z^m / m!.
    """
    m = 0
    while m < len(word) and word[len(word) - 1 - m] == z:
        m += 1
    if m == 0:
        return ((word, 0, Fraction(1)),)
    if m == len(word):
        return (((), m, Fraction(1, factorial(m))),)
    w1 = word[:-1]
    core = word[: len(word) - m]
    acc = {}
    for v, j, c in extract_trailing(w1, z):
        acc[(v, j + 1)] = acc.get((v, j + 1), 0) + c
    tail = (z,) * (m - 1)
    for i in range(len(core)):
        ins = core[:i] + (z,) + core[i:] + tail
        for v, j, c in extract_trailing(ins, z):
            acc[(v, j)] = acc.get((v, j), 0) - c
    return tuple((v, j, c / m) for (v, j), c in acc.items() if c)


def extract_leading(word: tuple, z) -> tuple:
    """Mirror of :func:`extract_trailing` for a run of leading ``z`` letters."""
    return tuple((tuple(reversed(v)), j, c) for v, j, c in extract_trailing(tuple(reversed(word)), z))


# --------------------------------------------------------------------------
# quasi-shuffle (stuffle)
# --------------------------------------------------------------------------
# Letters: harmonic ints a; S-sum pairs (a, x); cyclotomic quadruples (a, b, c, s).


def _sgn(a):
    return 1 if a > 0 else -1


def _h_diamond(a, b):
    return (((_sgn(a) * _sgn(b)) * (abs(a) + abs(b)), Fraction(1)),)


def _s_diamond(p, q):
    return (((p[0] + q[0], p[1] * q[1]), Fraction(1)),)


def _cyc_reduce(a, b, c):
    g = gcd(a, b)
    return (a // g, b // g), Fraction(1, g**c)


@lru_cache(maxsize=None)
def _partial_fractions(L1, L2, p, q):
    """1/(L1^p L2^q) over distinct reduced linear forms L=(a,b) for a*k+b.

    Returns ((which, exponent, coeff), ...) with which in {1, 2}.
    """
    if q == 0:
        return ((1, p, Fraction(1)),)
    if p == 0:
        return ((2, q, Fraction(1)),)
    (a1, b1), (a2, b2) = L1, L2
    E = a1 * b2 - a2 * b1
    acc = defaultdict(Fraction)
    for w, e, c in _partial_fractions(L1, L2, p, q - 1):
        acc[(w, e)] += Fraction(a1, E) * c
    for w, e, c in _partial_fractions(L1, L2, p - 1, q):
        acc[(w, e)] -= Fraction(a2, E) * c
    return tuple((w, e, c) for (w, e), c in acc.items() if c)


def _c_diamond(x, y):
    (a1, b1, c1, s1), (a2, b2, c2, s2) = x, y
    L1, f1 = _cyc_reduce(a1, b1, c1)
    L2, f2 = _cyc_reduce(a2, b2, c2)
    s = s1 * s2
    if L1 == L2:
        return (((L1[0], L1[1], c1 + c2, s), f1 * f2),)
    out = []
    for which, e, c in _partial_fractions(L1, L2, c1, c2):
        L = L1 if which == 1 else L2
        out.append(((L[0], L[1], e, s), f1 * f2 * c))
    return tuple(out)


def _z_diamond(a, b):
    return ((a + b, Fraction(1)),)


_DIAMONDS = {"h": _h_diamond, "s": _s_diamond, "c": _c_diamond, "z": _z_diamond}


@lru_cache(maxsize=None)
def quasi_shuffle(kind: str, A: tuple, B: tuple, sign: int) -> tuple:
    """Quasi-shuffle of letter tuples; ``sign`` multiplies the contracted term.

    ``sign=-1`` for sums with non-strict nesting (k1 >= k2 >= ...),
    ``sign=+1`` for strictly ordered sums (multiple zeta values).
    """
    if not A:
        return ((B, Fraction(1)),)
    if not B:
        return ((A, Fraction(1)),)
    diamond = _DIAMONDS[kind]
    acc = defaultdict(Fraction)
    a, b = A[0], B[0]
    for w, c in quasi_shuffle(kind, A[1:], B, sign):
        acc[(a,) + w] += c
    for w, c in quasi_shuffle(kind, A, B[1:], sign):
        acc[(b,) + w] += c
    tail = quasi_shuffle(kind, A[1:], B[1:], sign)
    for d, k in diamond(a, b):
        for w, c in tail:
            acc[(d,) + w] += sign * k * c
    return tuple((w, c) for w, c in acc.items() if c)


def _as_letters(atom, kind):
    if isinstance(atom, HSum):
        if kind == "h":
            return atom.index
        if kind == "s":
            return tuple((abs(a), Fraction(_sgn(a))) for a in atom.index)
        return tuple((1, 0, abs(a), Fraction(_sgn(a))) for a in atom.index)
    if isinstance(atom, SSum):
        if kind == "s":
            return tuple(zip(atom.exps, atom.weights))
        return tuple((1, 0, a, x) for a, x in zip(atom.exps, atom.weights))
    return tuple(t + (s,) for t, s in zip(atom.triples, atom.signs))


def _from_letters(kind, letters, bound):
    if not letters:
        return ()
    if kind == "h":
        return (HSum(letters, bound),)
    if kind == "s":
        if all(abs(x) == 1 for _, x in letters):
            return (HSum(tuple(a * int(x) for a, x in letters), bound),)
        return (SSum(tuple(a for a, _ in letters), tuple(x for _, x in letters), bound),)
    return (CSum(tuple(l[:3] for l in letters), tuple(l[3] for l in letters), bound),)


def _kind_for(*atoms):
    if any(isinstance(a, CSum) for a in atoms):
        return "c"
    if any(isinstance(a, SSum) for a in atoms):
        return "s"
    return "h"


def stuffle_atoms(s1, s2) -> Expr:
    """Stuffle product of two sum atoms with a common upper bound."""
    if not isinstance(s1, SUM_TYPES) or not isinstance(s2, SUM_TYPES):
        raise DomainError("stuffle product needs two sum terms")
    if s1.bound != s2.bound:
        raise DomainError(f"mixed upper bounds {s1.bound!r} and {s2.bound!r}")
    kind = _kind_for(s1, s2)
    res = quasi_shuffle(kind, _as_letters(s1, kind), _as_letters(s2, kind), -1)
    return Expr([(_from_letters(kind, w, s1.bound), c) for w, c in res])


def zeta_stuffle(k1: Sequence[int], k2: Sequence[int]) -> Expr:
    """Strict stuffle of two (multiple) zeta values, e.g. z2*z2 = 2 z[2,2] + z4."""
    res = quasi_shuffle("z", tuple(k1), tuple(k2), 1)
    return Expr([((Const("z", w),), c) for w, c in res])


def stuffle_expand(e, zetas: bool = False) -> Expr:
    """Rewrite products of sums with a common bound as linear combinations.

    With ``zetas=True`` products of zeta constants are expanded as well.
    """
    e = as_expr(e)
    out = []
    for mon, c in e.items():
        groups = defaultdict(list)
        rest = []
        for a in mon:
            if isinstance(a, SUM_TYPES):
                groups[a.bound].append(a)
            elif zetas and isinstance(a, Const) and a.name == "z":
                groups[None].append(a)
            else:
                rest.append(a)
        term = Expr.mono(tuple(rest), c)
        for bound, atoms in groups.items():
            acc = Expr.atom(atoms[0])
            for b in atoms[1:]:
                nxt = Expr()
                for m, k in acc.items():
                    if bound is None:
                        nxt = nxt + zeta_stuffle(m[0].key, b.key) * k
                    else:
                        nxt = nxt + stuffle_atoms(m[0], b) * k
                acc = nxt
            term = term * acc
        out.extend(term.items())
    return Expr(out)


def stuffle_product(s1, s2) -> Expr:
    """Stuffle product of two sums (or linear combinations of sums)."""
    e1, e2 = as_expr(s1), as_expr(s2)
    bounds = {a.bound for a in e1.atoms() | e2.atoms() if isinstance(a, SUM_TYPES)}
    if len(bounds) > 1:
        raise DomainError(f"mixed upper bounds {sorted(bounds)}")
    return stuffle_expand(e1 * e2)


def cyclotomic_stuffle(s1: CSum, s2: CSum) -> Expr:
    if not isinstance(s1, CSum) or not isinstance(s2, CSum):
        raise DomainError("cyclotomic_stuffle needs two cyclotomic sums")
    return stuffle_atoms(s1, s2)


def expand_products(e) -> Expr:
    return shuffle_expand(stuffle_expand(e))


# --------------------------------------------------------------------------
# Lyndon words
# --------------------------------------------------------------------------


def lyndon_words(alphabet: Sequence, w: int) -> list:
    """Lyndon words of length exactly ``w`` over the ordered ``alphabet``.

    Duval's successor algorithm; output is lexicographically increasing.
    """
    if w < 1:
        raise DomainError("Lyndon word length must be >= 1")
    k = len(alphabet)
    if k == 0:
        return []
    out = []
    word = [-1]
    while word:
        word[-1] += 1
        m = len(word)
        if m == w:
            out.append(tuple(alphabet[i] for i in word))
        while len(word) < w:
            word.append(word[len(word) - m])
        while word and word[-1] == k - 1:
            word.pop()
    return out


def lyndon_words_multiset(counts: dict) -> list:
    """Lyndon words with prescribed letter multiplicities; dict order = letter order."""
    alphabet = list(counts)
    n = sum(counts.values())
    want = {a: counts[a] for a in alphabet}
    return [u for u in lyndon_words(alphabet, n) if all(u.count(a) == want[a] for a in alphabet)]


def is_lyndon(word: Sequence, key=lambda x: x) -> bool:
    k = [key(x) for x in word]
    return bool(k) and all(k < k[i:] for i in range(1, len(k)))


def lyndon_factorization(word: Sequence, key=lambda x: x) -> list:
    """Chen-Fox-Lyndon factorization into non-increasing Lyndon words."""
    s = [key(x) for x in word]
    n, i, out = len(s), 0, []
    while i < n:
        j, k = i + 1, i
        while j < n and s[k] <= s[j]:
            k = i if s[k] < s[j] else k + 1
            j += 1
        while i <= k:
            out.append(tuple(word[i : i + j - k]))
            i += j - k
    return out


def witt_count(counts: dict) -> int:
    """Number of Lyndon words with the given letter multiplicities."""
    ns = [n for n in counts.values() if n]
    if not ns:
        return 0
    n = sum(ns)
    g = 0
    for v in ns:
        g = gcd(g, v)
    total = Fraction(0)
    for d in divisors(g):
        multinom = factorial(n // d)
        for v in ns:
            multinom //= factorial(v // d)
        total += int(mobius(d)) * multinom
    total /= n
    assert total.denominator == 1
    return int(total)


def _necklace(m: int, w: int, base=None) -> Fraction:
    """(1/w) sum_{d|w} mu(w/d) base(d), with base(d) = m^d by default."""
    base = base or (lambda d: m**d)
    return Fraction(sum(int(mobius(w // d)) * base(d) for d in divisors(w)), w)


def count_basis(m: int, w: int) -> int:
    """Number of Lyndon words of length ``w`` over ``m`` letters."""
    if m < 1 or w < 1:
        raise DomainError("count_basis needs m >= 1 and w >= 1")
    return int(_necklace(m, w))


# --------------------------------------------------------------------------
# counting catalog
# --------------------------------------------------------------------------

FAMILIES = (
    "hsum_all", "hpl_all", "N_H", "N_AH", "N_D", "N_DH", "N_ADH",
    "ssum_all", "cyc_S", "cyc_A", "cyc_D", "cyc_AD", "cyc_ADMH",
)


def _n_ah(w, variant):
    if w == 0:
        return 0
    if variant == "printed":
        return _necklace(0, w, lambda d: 2**2 - 3**d)
    return _necklace(0, w, lambda d: 3**d - 2**d)


def _admh_inner(w, variant):
    if w == 0:
        return Fraction(0)
    if variant == "printed":
        return _necklace(0, w, lambda d: 5**2 - 3 * 2**d)
    return _necklace(0, w, lambda d: 5**d - 3 * 2**d)


def counting_catalog(family: str, w: int, n: int | None = None, variant: str = "corrected"):
    """Closed-form basis/sum counts at weight ``w``.

    ``variant`` selects between the literal printed reading and the corrected
    reading for the two families whose printed brackets are doubtful
    (``N_AH`` and ``cyc_ADMH``).  For ``N_AH`` the printed reading is
    returned as a magnitude, since the literal bracket is negative for w > 1.
    ``ssum_all`` needs the alphabet size ``n``.
    """
    if w < 1:
        raise DomainError("weight must be >= 1")
    if variant not in ("printed", "corrected"):
        raise DomainError(f"unknown variant {variant!r}")
    if family == "hsum_all":
        return 2 * 3 ** (w - 1)
    if family == "hpl_all":
        return 3**w
    if family == "N_H":
        return 2 * 3 ** (w - 1) - 2 ** (w - 1)
    if family == "N_AH":
        v = _n_ah(w, variant)
        return int(abs(v))
    if family == "N_D":
        return 4 * 3 ** (w - 1)
    if family == "N_DH":
        if w < 2:
            raise DomainError("N_DH needs w >= 2")
        return 4 * 3 ** (w - 2) - 2 ** (w - 2)
    if family == "N_ADH":
        return int(abs(_n_ah(w, variant)) - abs(_n_ah(w - 1, variant)))
    if family == "ssum_all":
        if n is None or n < 2:
            raise DomainError("ssum_all needs alphabet size n >= 2")
        return (n - 1) * n ** (w - 1)
    cyc_s = lambda v: 4 * 5 ** (v - 1) if v >= 1 else 0  # noqa: E731
    cyc_a = lambda v: int(_necklace(5, v)) if v >= 1 else 0  # noqa: E731
    if family == "cyc_S":
        return cyc_s(w)
    if family == "cyc_A":
        return cyc_a(w)
    if family == "cyc_D":
        return cyc_s(w) - cyc_s(w - 1)
    if family == "cyc_AD":
        return cyc_a(w) - cyc_a(w - 1)
    if family == "cyc_ADMH":
        v = _admh_inner(w, variant) - _admh_inner(w - 1, variant)
        return int(v)
    raise DomainError(f"unknown counting family {family!r}")


def explicit_n_ah(w: int) -> int:
    """Lyndon words over the ordered alphabet (-1, 0, 1) containing -1."""
    return sum(1 for u in lyndon_words((-1, 0, 1), w) if -1 in u)


# --------------------------------------------------------------------------
# basis reduction
# --------------------------------------------------------------------------


def sum_letter_key(a: int):
    # larger |a| is smaller, then alternating before plain: S_{2,1} is Lyndon
    return (-abs(a), 0 if a < 0 else 1)


def word_letter_key(l):
    return letter_key(l)


def _signed_compositions(w):
    if w == 0:
        yield ()
        return
    for first in range(1, w + 1):
        for rest in _signed_compositions(w - first):
            yield (first,) + rest
            yield (-first,) + rest


def _core_words(w):
    if w == 0:
        yield ()
        return
    for rest in _core_words(w - 1):
        for l in (-1, 0, 1):
            yield (l,) + rest


@lru_cache(maxsize=None)
def _basis_table(kind: str, w: int, tag: str):
    """Map each index/word of weight w to an Expr in Lyndon generators."""
    if kind == "h":
        items = sorted(set(_signed_compositions(w)))
        key = sum_letter_key
        atom = lambda u: HSum(u, tag)  # noqa: E731
        expand = stuffle_expand
    else:
        items = sorted(set(_core_words(w)))
        key = word_letter_key
        atom = lambda u: HWord(u, tag)  # noqa: E731
        expand = shuffle_expand
    pos = {u: i for i, u in enumerate(items)}
    n = len(items)
    monos = []
    M = []
    for u in items:
        mon = tuple(sorted((atom(f) for f in lyndon_factorization(u, key)), key=atom_key))
        monos.append(mon)
        row = [Fraction(0)] * n
        for m, c in expand(Expr.mono(mon)).items():
            lett = m[0].index if kind == "h" else m[0].letters
            row[pos[lett]] += c
        M.append(row)
    X = bareiss_solve(M, [[Fraction(int(i == j)) for j in range(n)] for i in range(n)])
    table = {}
    for v, i in pos.items():
        table[v] = Expr([(monos[j], X[i][j]) for j in range(n) if X[i][j]])
    return table


def lyndon_basis_rewrite(atom):
    """Expression of one harmonic sum or core word in Lyndon generators."""
    if isinstance(atom, HSum):
        if atom.weight > 4:
            raise DomainError("basis reduction supports weight <= 4")
        return _basis_table("h", atom.weight, atom.bound)[atom.index]
    if isinstance(atom, HWord):
        if any(l not in (-1, 0, 1) for l in atom.letters):
            raise DomainError("basis reduction supports the core alphabet {0, 1, -1} only")
        if atom.weight > 4:
            raise DomainError("basis reduction supports weight <= 4")
        return _basis_table("w", atom.weight, atom.arg)[atom.letters]
    return None


def reduce_to_basis(e, w_max: int = 4) -> Expr:
    """Rewrite ``e`` as a polynomial in Lyndon-index sums and Lyndon words."""
    e = as_expr(e)
    if w_max > 4:
        raise DomainError("basis reduction supports weight <= 4")
    ws = e.weights()
    if len(ws) > 1:
        raise DomainError(f"expression is not homogeneous in weight: {sorted(ws)}")
    if ws and max(ws) > w_max:
        raise DomainError(f"weight {max(ws)} exceeds w_max={w_max}")
    for a in e.atoms():
        if not isinstance(a, (HSum, HWord, Const)):
            raise DomainError("basis reduction handles harmonic sums and core words only")
    expanded = expand_products(e)
    return expanded.substitute(lyndon_basis_rewrite)


def is_basis_atom(a) -> bool:
    if isinstance(a, HSum):
        return is_lyndon(a.index, sum_letter_key)
    if isinstance(a, HWord):
        return is_lyndon(a.letters, word_letter_key)
    return True


def all_harmonic_indices(max_weight: int) -> Iterable[tuple]:
    for w in range(1, max_weight + 1):
        yield from _signed_compositions(w)
