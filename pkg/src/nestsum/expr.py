"""Canonical terms (sums, words, constants) and exact linear combinations of them.

An :class:`Expr` maps *monomials* to :class:`fractions.Fraction` coefficients.
A monomial is a sorted tuple of atoms (``()`` is the unit), so products of
atoms are representable without expanding them.  Everything here is immutable.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Callable, Iterable, Iterator, Union

from .errors import SemanticError

Rational = Fraction
Number = Union[int, Fraction]

_BOUND_RE = re.compile(r"^(?:inf|[0-9]*[A-Za-z][A-Za-z0-9_]*)$")


def to_fraction(q) -> Fraction:
    if isinstance(q, Fraction):
        return q
    if isinstance(q, int):
        return Fraction(q)
    if isinstance(q, str):
        return Fraction(q)
    raise TypeError(f"not an exact rational: {q!r}")


def totient(k: int) -> int:
    return sum(1 for i in range(1, k + 1) if gcd(i, k) == 1)


# --------------------------------------------------------------------------
# letters
# --------------------------------------------------------------------------

def make_letter(v):
    """Normalize a letter.

    Core and generalized letters are exact rationals (``0, 1, -1, 2, 1/2``);
    ``a`` stands for ``dz/(|a| - sign(a) z)`` and ``0`` for ``dz/z``.
    Cyclotomic letters are pairs ``(k, l)`` for ``z^l dz / Phi_k(z)``.  The
    pairs that coincide with core letters are folded onto them:
    ``(0,0) -> 0``, ``(1,0) -> 1`` and ``(2,0) -> -1``.
    """
    if isinstance(v, tuple):
        if len(v) != 2:
            raise SemanticError(f"cyclotomic letter needs two entries: {v!r}")
        k, l = int(v[0]), int(v[1])
        if k == 0 and l == 0:
            return 0
        if k < 1:
            raise SemanticError(f"cyclotomic letter index k must be positive: {v!r}")
        if not 0 <= l < totient(k):
            raise SemanticError(f"cyclotomic letter needs 0 <= l < phi(k): {v!r}")
        if k == 1:
            return 1
        if k == 2:
            return -1
        return (k, l)
    q = to_fraction(v)
    return int(q) if q.denominator == 1 else q


def is_cyclotomic(letter) -> bool:
    return isinstance(letter, tuple)


def letter_key(letter):
    if isinstance(letter, tuple):
        return (1, letter[0], letter[1])
    return (0, Fraction(letter))


def letter_str(letter) -> str:
    if isinstance(letter, tuple):
        return f"({letter[0]},{letter[1]})"
    return str(letter)


# --------------------------------------------------------------------------
# atoms
# --------------------------------------------------------------------------

def _check_bound(bound: str) -> str:
    if not isinstance(bound, str) or not _BOUND_RE.match(bound):
        raise SemanticError(f"bad upper bound symbol {bound!r}")
    return bound


def _is_number_text(s: str) -> bool:
    return re.fullmatch(r"-?\d+(?:/\d+)?(?:\.\d+)?", s) is not None


@dataclass(frozen=True)
class HSum:
    """Harmonic sum S_{a1,...,ak}(bound); the sign of a_i selects (+-1)^k."""

    index: tuple
    bound: str = "N"

    def __post_init__(self):
        idx = tuple(int(a) for a in self.index)
        if not idx:
            raise SemanticError("empty harmonic index (use the unit 1)")
        if any(a == 0 for a in idx):
            raise SemanticError(f"harmonic index entries must be nonzero: {idx}")
        object.__setattr__(self, "index", idx)
        _check_bound(self.bound)

    @property
    def weight(self):
        return sum(abs(a) for a in self.index)

    @property
    def depth(self):
        return len(self.index)

    @property
    def is_constant(self):
        return self.bound == "inf"

    def sort_key(self):
        return (0, self.index, self.bound)


@dataclass(frozen=True)
class SSum:
    """Generalized (S-)sum S_{a1,...}(x1,...; bound) with rational weights x_i."""

    exps: tuple
    weights: tuple
    bound: str = "N"

    def __post_init__(self):
        exps = tuple(int(a) for a in self.exps)
        ws = tuple(to_fraction(x) for x in self.weights)
        if not exps:
            raise SemanticError("empty S-sum index (use the unit 1)")
        if len(exps) != len(ws):
            raise SemanticError("S-sum exponents and weights differ in length")
        if any(a < 1 for a in exps):
            raise SemanticError(f"S-sum exponents must be positive: {exps}")
        if any(x == 0 for x in ws):
            raise SemanticError("S-sum weights must be nonzero")
        object.__setattr__(self, "exps", exps)
        object.__setattr__(self, "weights", ws)
        _check_bound(self.bound)

    @property
    def weight(self):
        return sum(self.exps)

    @property
    def depth(self):
        return len(self.exps)

    @property
    def is_constant(self):
        return self.bound == "inf"

    def sort_key(self):
        return (1, tuple(zip(self.exps, self.weights)), self.bound)


@dataclass(frozen=True)
class CSum:
    """Cyclotomic sum with summands s_i^k / (a_i k + b_i)^{c_i}."""

    triples: tuple
    signs: tuple
    bound: str = "N"

    def __post_init__(self):
        trs = tuple(tuple(int(v) for v in t) for t in self.triples)
        ss = tuple(to_fraction(s) for s in self.signs)
        if not trs:
            raise SemanticError("empty cyclotomic index (use the unit 1)")
        if len(trs) != len(ss):
            raise SemanticError("cyclotomic triples and signs differ in length")
        for t in trs:
            if len(t) != 3:
                raise SemanticError(f"cyclotomic entry needs (a,b,c): {t}")
            a, b, c = t
            if a < 1 or b < 0 or c < 1:
                raise SemanticError(f"cyclotomic entry needs a>=1, b>=0, c>=1: {t}")
            if not a > b:
                raise SemanticError(f"cyclotomic entry needs a > b: {t}")
        if any(s == 0 for s in ss):
            raise SemanticError("cyclotomic signs must be nonzero")
        object.__setattr__(self, "triples", trs)
        object.__setattr__(self, "signs", ss)
        _check_bound(self.bound)

    @property
    def weight(self):
        return sum(t[2] for t in self.triples)

    @property
    def depth(self):
        return len(self.triples)

    @property
    def is_constant(self):
        return self.bound == "inf"

    def sort_key(self):
        return (2, tuple(zip(self.triples, self.signs)), self.bound)


@dataclass(frozen=True)
class HWord:
    """Iterated integral H_{l1,...,ln}(arg); leftmost letter is outermost."""

    letters: tuple
    arg: str = "x"

    def __post_init__(self):
        ls = tuple(make_letter(v) for v in self.letters)
        if not ls:
            raise SemanticError("empty word (use the unit 1)")
        object.__setattr__(self, "letters", ls)
        if not (_BOUND_RE.match(self.arg) or _is_number_text(self.arg)):
            raise SemanticError(f"bad word argument {self.arg!r}")

    @property
    def weight(self):
        return len(self.letters)

    @property
    def depth(self):
        return sum(1 for l in self.letters if l != 0)

    @property
    def is_constant(self):
        return _is_number_text(self.arg)

    def sort_key(self):
        return (3, tuple(letter_key(l) for l in self.letters), self.arg)


CONSTANT_NAMES = ("z", "ln2", "li", "catalan", "sigma0", "pi")


@dataclass(frozen=True)
class Const:
    """Named constant.

    ``z`` keyed by an index tuple (zeta values, single or multiple),
    ``li`` keyed by ``(k,)`` for Li_k(1/2), plus ``ln2``, ``catalan``,
    ``pi`` and the divergence marker ``sigma0`` (regularized S_1(inf)).
    """

    name: str
    key: tuple = ()

    def __post_init__(self):
        if self.name not in CONSTANT_NAMES:
            raise SemanticError(f"unknown constant {self.name!r}")
        key = tuple(int(k) for k in self.key)
        object.__setattr__(self, "key", key)
        if self.name == "z":
            if not key or key[0] < 2 or any(k < 1 for k in key):
                raise SemanticError(f"zeta index must be admissible: {key}")
        elif self.name == "li":
            if len(key) != 1 or key[0] < 1:
                raise SemanticError(f"Li_k(1/2) needs k >= 1: {key}")
        elif key:
            raise SemanticError(f"constant {self.name} takes no index")

    @property
    def weight(self):
        if self.name in ("z", "li"):
            return sum(self.key)
        if self.name == "catalan":
            return 2
        return 1

    @property
    def depth(self):
        return max(1, len(self.key))

    is_constant = True

    def sort_key(self):
        return (4, CONSTANT_NAMES.index(self.name), self.key)


Atom = Union[HSum, SSum, CSum, HWord, Const]
SUM_TYPES = (HSum, SSum, CSum)


def atom_key(a):
    # constants sort after everything of the same weight and depth
    return (a.weight, a.depth, a.sort_key())


def weight(t) -> int:
    """Weight of an atom or monomial (the unit has weight 0)."""
    if isinstance(t, tuple):
        return sum(a.weight for a in t)
    return t.weight


def monomial(*atoms) -> tuple:
    return tuple(sorted(atoms, key=atom_key))


def monomial_key(m):
    # weight ascending, then deeper terms first, so 2*S[1,1](N) - S[2](N)
    return (weight(m), -sum(a.depth for a in m), len(m), tuple(atom_key(a) for a in m))


# --------------------------------------------------------------------------
# Expr
# --------------------------------------------------------------------------

class Expr:
    """Formal Q-linear combination of monomials; immutable."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms=None):
        acc = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for mon, c in items:
                c = to_fraction(c)
                if c:
                    acc[mon] = acc.get(mon, 0) + c
        self._terms = {m: acc[m] for m in sorted(acc, key=monomial_key) if acc[m]}
        self._hash = None

    # constructors
    @classmethod
    def atom(cls, a, coeff=1):
        return cls({(a,): coeff})

    @classmethod
    def const(cls, q):
        return cls({(): q})

    @classmethod
    def mono(cls, mon, coeff=1):
        return cls({tuple(sorted(mon, key=atom_key)): coeff})

    # container protocol
    def items(self):
        return self._terms.items()

    def __iter__(self) -> Iterator:
        return iter(self._terms)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def coeff(self, mon) -> Fraction:
        if not isinstance(mon, tuple):
            mon = (mon,)
        return self._terms.get(mon, Fraction(0))

    # arithmetic
    def __add__(self, other):
        other = _as_expr(other)
        if other is NotImplemented:
            return other
        return Expr(list(self._terms.items()) + list(other._terms.items()))

    __radd__ = __add__

    def __neg__(self):
        return Expr({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = _as_expr(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Expr({m: c * other for m, c in self._terms.items()})
        other = _as_expr(other)
        if other is NotImplemented:
            return other
        out = []
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                out.append((tuple(sorted(m1 + m2, key=atom_key)), c1 * c2))
        return Expr(out)

    __rmul__ = __mul__

    def __truediv__(self, q):
        return self * (1 / to_fraction(q))

    def __pow__(self, n: int):
        out = Expr.const(1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        other = _as_expr(other)
        if other is NotImplemented:
            return False
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self):
        from .grammar import format_expr

        return f"Expr({format_expr(self)!r})"

    # structural helpers
    def atoms(self) -> set:
        return {a for m in self._terms for a in m}

    def substitute(self, fn: Callable[[object], "Expr | None"]) -> "Expr":
        """Replace each atom ``a`` by ``fn(a)`` (an Expr) when not None."""
        out = Expr()
        cache = {}
        for m, c in self._terms.items():
            term = Expr.const(c)
            for a in m:
                if a not in cache:
                    r = fn(a)
                    cache[a] = Expr.atom(a) if r is None else r
                term = term * cache[a]
            out = out + term
        return out

    def weights(self) -> set:
        return {weight(m) for m in self._terms}

    def is_linear(self) -> bool:
        return all(len(m) <= 1 for m in self._terms)


def _as_expr(x):
    if isinstance(x, Expr):
        return x
    if isinstance(x, (int, Fraction)):
        return Expr.const(x)
    if isinstance(x, (HSum, SSum, CSum, HWord, Const)):
        return Expr.atom(x)
    return NotImplemented


def as_expr(x) -> Expr:
    r = _as_expr(x)
    if r is NotImplemented:
        raise TypeError(f"cannot convert {x!r} to Expr")
    return r


def canonicalize(e: Expr) -> Expr:
    """Merge equal monomials, drop zeros, order terms deterministically."""
    return Expr(list(e.items()))


def linear_combination(pairs: Iterable) -> Expr:
    return sum((as_expr(t) * c for t, c in pairs), Expr())


# convenience builders used across the package

def hsum(index, bound="N") -> Expr:
    index = tuple(index)
    return Expr.const(1) if not index else Expr.atom(HSum(index, bound))


def word(letters, arg="x") -> Expr:
    letters = tuple(letters)
    return Expr.const(1) if not letters else Expr.atom(HWord(letters, arg))


def zeta(*key) -> Expr:
    return Expr.atom(Const("z", key))


LN2 = Const("ln2")
CATALAN = Const("catalan")
SIGMA0 = Const("sigma0")
PI = Const("pi")
