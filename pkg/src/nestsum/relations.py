"""Structural relations: duplication, argument maps of words, Mellin forms, d/dN."""
from __future__ import annotations

import re
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product

from .algebra import extract_trailing, shuffle_expand
from .boundary import sigma_canonical, simplify_constants, words_at_one
from .errors import DomainError, NestsumError
from .expr import SIGMA0, Expr, HSum, HWord, SSum, as_expr, atom_key, make_letter
from .grammar import format_expr, parse, to_json_obj

# --------------------------------------------------------------------------
# duplication
# --------------------------------------------------------------------------


def doubled_bound(bound: str) -> str:
    if bound == "inf":
        return bound
    m = re.fullmatch(r"(\d*)([A-Za-z]\w*)", bound)
    if not m:
        raise DomainError(f"cannot double bound {bound!r}")
    k = int(m.group(1) or 1) * 2
    return f"{k}{m.group(2)}"


def duplicate_hsum(idx) -> Expr:
    """S_i(N) = 2^{|i| - depth} sum over signs S_{+-i}(2N), positive indices only."""
    if isinstance(idx, HSum):
        bound, idx = idx.bound, idx.index
    else:
        bound, idx = "N", tuple(idx)
    if not idx or any(i <= 0 for i in idx):
        raise DomainError("duplication needs positive indices")
    b2 = doubled_bound(bound)
    scale = Fraction(2) ** (sum(idx) - len(idx))
    out = Expr()
    for signs in product((1, -1), repeat=len(idx)):
        out = out + Expr.atom(HSum(tuple(s * i for s, i in zip(signs, idx)), b2)) * scale
    return out


def _ssum_atom(exps, ws, bound):
    if all(abs(x) == 1 for x in ws):
        return HSum(tuple(a * int(x) for a, x in zip(exps, ws)), bound)
    return SSum(exps, ws, bound)


def duplicate_ssum(atom: SSum):
    """(lhs, rhs) with lhs = sum over signs S_a(+-b; 2N), rhs = 2^{m - sum a} S_a(b^2; N)."""
    if isinstance(atom, HSum):
        exps = tuple(abs(a) for a in atom.index)
        ws = tuple(Fraction(1 if a > 0 else -1) for a in atom.index)
        bound = atom.bound
    elif isinstance(atom, SSum):
        exps, ws, bound = atom.exps, atom.weights, atom.bound
    else:
        raise DomainError("duplicate_ssum needs an S-sum")
    b2 = doubled_bound(bound)
    lhs = Expr()
    for signs in product((1, -1), repeat=len(exps)):
        lhs = lhs + Expr.atom(_ssum_atom(exps, tuple(s * x for s, x in zip(signs, ws)), b2))
    rhs = Expr.atom(_ssum_atom(exps, tuple(x * x for x in ws), bound)) * Fraction(
        1, 2 ** (sum(exps) - len(exps))
    )
    return lhs, rhs


# --------------------------------------------------------------------------
# argument transformations of words
# --------------------------------------------------------------------------


def _word_atom(w) -> HWord:
    if isinstance(w, HWord):
        return w
    if isinstance(w, Expr):
        items = list(w.items())
        if len(items) == 1 and len(items[0][0]) == 1 and isinstance(items[0][0][0], HWord):
            return items[0][0][0]
        raise DomainError("expected a single word")
    return HWord(tuple(w), "x")


def minus_x(w) -> Expr:
    """H_a(-x) = (-1)^p H_{-a}(x), p = number of nonzero letters."""
    w = _word_atom(w)
    if any(isinstance(l, tuple) for l in w.letters):
        raise DomainError("x -> -x is implemented for rational letters only")
    if w.letters[-1] == 0:
        raise DomainError("x -> -x needs a nonzero trailing letter")
    p = sum(1 for l in w.letters if l != 0)
    return Expr.atom(HWord(tuple(-l for l in w.letters), w.arg)) * (-1) ** p


def prepend(E: Expr, letter, coeff=1, arg: str = "x") -> Expr:
    """Apply t -> int_0^t f_letter(u) E(u) du to an Expr linear in words of ``arg``.

    A word-free monomial c becomes c * H_letter (the regularized primitive).
    """
    out = []
    for mon, c in E.items():
        ws = [a for a in mon if isinstance(a, HWord) and a.arg == arg]
        if len(ws) > 1:
            raise DomainError("prepend needs an expression linear in words")
        rest = [a for a in mon if not (isinstance(a, HWord) and a.arg == arg)]
        letters = (letter,) + (ws[0].letters if ws else ())
        new = tuple(sorted(rest + [HWord(letters, arg)], key=atom_key))
        out.append((new, c * coeff))
    return Expr(out)


@lru_cache(maxsize=None)
def _omx_nontrailing(v: tuple) -> Expr:
    # H_v(1-x) for v without trailing zero
    a, rest = v[0], v[1:]
    inner = one_minus_x_letters(rest)
    P = prepend(-inner, 1 - a)
    return shuffle_expand(P - words_at_one(P))


@lru_cache(maxsize=None)
def one_minus_x_letters(letters: tuple) -> Expr:
    if not letters:
        return Expr.const(1)
    h1 = Expr.atom(HWord((1,), "x"))
    out = Expr()
    for v, j, c in extract_trailing(letters, 0):
        term = (-h1) ** j * c  # H_0(1-x) = -H_1(x)
        if v:
            term = term * _omx_nontrailing(v)
        out = out + term
    return shuffle_expand(out)


def one_minus_x(w, max_weight: int = 4) -> Expr:
    """H_w(1-x) for words over {0,1}, as words of x plus zeta values."""
    w = _word_atom(w)
    if any(l not in (0, 1) for l in w.letters):
        raise DomainError("x -> 1-x is implemented for words over {0, 1}")
    if len(w.letters) > max_weight:
        raise DomainError(f"weight {len(w.letters)} exceeds {max_weight}")
    e = one_minus_x_letters(w.letters)
    if w.arg != "x":
        e = e.substitute(lambda a: Expr.atom(HWord(a.letters, w.arg)) if isinstance(a, HWord) else None)
    return e


def apply_one_minus_x(e) -> Expr:
    """Apply x -> 1-x to every {0,1} word of argument x in ``e``."""

    def sub(a):
        if isinstance(a, HWord) and a.arg == "x":
            return one_minus_x(a, max_weight=len(a.letters))
        return None

    return shuffle_expand(as_expr(e).substitute(sub))


def apply_minus_x(e) -> Expr:
    def sub(a):
        if isinstance(a, HWord) and a.arg == "x":
            return minus_x(a)
        return None

    return as_expr(e).substitute(sub)


@dataclass(frozen=True)
class TransformEntry:
    """H_word(g(x)) = real + i*imag, both in the text grammar."""

    kind: str
    word: tuple
    real: str
    imag: str = "0"
    note: str = ""

    @property
    def real_expr(self) -> Expr:
        return parse(self.real)

    @property
    def imag_expr(self) -> Expr:
        return parse(self.imag)


TRANSFORM_TABLE = (
    TransformEntry(
        "x^2",
        (1, 0, 0, 1),
        "4*(H[1,0,0,1](x) - H[1,0,0,-1](x) - H[-1,0,0,1](x) + H[-1,0,0,-1](x))",
    ),
    TransformEntry(
        "1/x",
        (1, 0, 1),
        "H[0](x)*(H[0,1](x) - 4*z2 + pi^2) - 2*(H[0,0,1](x) - H[0,1,1](x) + z3)"
        " - H[1](x)*H[0,1](x) + 2*z2*H[1](x) - 1/6*H[0](x)^3 - 1/2*H[1](x)*H[0](x)^2",
        "pi*H[0](x)*H[1](x) - pi*H[0,1](x) + 1/2*pi*H[0](x)^2",
        note="argument continued as 1/x - i*0",
    ),
    TransformEntry(
        "(1-x)/(1+x)",
        (1, -1, 0),
        "1/6*H[-1](x)^3 + H[-1,-1,1](x) - H[0,-1,-1](x) - H[0,-1,1](x) + 15/8*z3"
        " - 1/2*z2*(H[-1](x) - H[0](x)) - 2*(1/8*z3 - 1/2*ln2*z2) - 2*ln2*z2",
    ),
)


def transform_table(kind: str | None = None):
    if kind is None:
        return TRANSFORM_TABLE
    hits = [t for t in TRANSFORM_TABLE if t.kind == kind]
    if not hits:
        raise DomainError(f"no table entry for transform {kind!r}")
    return hits


def transformed_argument(kind: str, x):
    """Numeric argument g(x) for a table entry (complex for 1/x)."""
    import mpmath

    x = mpmath.mpf(x)
    if kind == "x^2":
        return x * x
    if kind == "1/x":
        # the stored imaginary part belongs to the approach from below the cut
        return mpmath.mpc(1 / x, -(mpmath.mpf(10) ** (-mpmath.mp.dps - 5)))
    if kind == "(1-x)/(1+x)":
        return (1 - x) / (1 + x)
    raise DomainError(f"unknown transform {kind!r}")


# --------------------------------------------------------------------------
# Mellin forms
# --------------------------------------------------------------------------


def _zeros(n):
    return Expr.const(1) if n == 0 else Expr.atom(HWord((0,) * n, "x"))


def _base_kernel(m: int) -> Expr:
    # 1/k^m = int_0^1 x^(k-1) (-1)^(m-1) H_{0^(m-1)}(x) dx
    return _zeros(m - 1) * (-1) ** (m - 1)


@dataclass(frozen=True)
class MellinForm:
    """S(N) = constant + sum_eps int_0^1 ((eps x)^N - 1)/(x - 1/eps) * kernel_eps(x) dx.

    ``pieces`` is a tuple of (eps, kernel) with eps a nonzero rational and
    kernel an Expr linear in words of x (coefficients may carry constants).
    """

    pieces: tuple
    constant: Expr = field(default_factory=Expr)

    def kernel(self, eps) -> Expr:
        for e, k in self.pieces:
            if e == eps:
                return k
        return Expr()

    def split(self) -> "SplitMellinForm":
        """Pull eps^N out of every eps != 1 piece; the rest becomes constant.

        int ((eps x)^N - 1)/(x - c) E = eps^N int x^N E/(x - c) - int E/(x - c), c = 1/eps.
        """
        const = self.constant
        terms = []
        for eps, E in self.pieces:
            if eps == 1:
                terms.append(("sub", eps, E))
                continue
            c = 1 / eps
            sgn = 1 if c > 0 else -1
            W = prepend(E, make_letter(c), -sgn)
            const = const - simplify_constants(words_at_one(W))
            terms.append(("pow", eps, E))
        return SplitMellinForm(tuple(terms), simplify_constants(const))

    def to_text(self) -> str:
        lines = []
        for eps, E in self.pieces:
            lines.append(f"{_prefactor_text(eps)} * [{format_expr(E)}]")
        if self.constant:
            lines.append(f"constant: {format_expr(self.constant)}")
        return "\n".join(lines)

    def to_json_obj(self):
        return {
            "pieces": [
                {"eps": _q(eps), "prefactor": _prefactor_text(eps), "kernel": to_json_obj(E)}
                for eps, E in self.pieces
            ],
            "constant": to_json_obj(self.constant),
        }


@dataclass(frozen=True)
class SplitMellinForm:
    """Terms are ("pow", eps, E): eps^N int x^N E/(x - 1/eps) dx, or ("sub", eps, E) as in MellinForm."""

    terms: tuple
    constant: Expr

    def to_text(self) -> str:
        lines = []
        for kind, eps, E in self.terms:
            if kind == "sub":
                lines.append(f"{_prefactor_text(eps)} * [{format_expr(E)}]")
            else:
                lines.append(f"({_q(eps)})^N * int_0^1 dx x^N/({_den_text(eps)}) * [{format_expr(E)}]")
        lines.append(f"constant: {format_expr(self.constant)}")
        return "\n".join(lines)

    def to_json_obj(self):
        return {
            "terms": [
                {"kind": kind, "eps": _q(eps), "kernel": to_json_obj(E)} for kind, eps, E in self.terms
            ],
            "constant": to_json_obj(self.constant),
        }


def _q(q):
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _den_text(eps):
    c = 1 / Fraction(eps)
    return "x - " + _q(c) if c > 0 else "x + " + _q(-c)


def _prefactor_text(eps):
    eps = Fraction(eps)
    if eps == 1:
        num = "x^N - 1"
    elif eps == -1:
        num = "(-x)^N - 1"
    else:
        num = f"({_q(eps)}*x)^N - 1"
    return f"int_0^1 dx ({num})/({_den_text(eps)})"


def _add(out, eps, E):
    out[Fraction(eps)] = out.get(Fraction(eps), Expr()) + E


def _integrate_by_parts(out, W, m, sig):
    # adds -int_0^1 W(t) d/dt [sum_k (sig t)^k/k^m] dt
    if m == 1:
        _add(out, sig, -W)
        return
    C = simplify_constants(words_at_one(prepend(W, 0)))
    _add(out, sig, -C * _base_kernel(m - 1))
    _integrate_by_parts(out, prepend(-W, 0), m - 1, sig)


@lru_cache(maxsize=None)
def _harmonic_pieces(index: tuple) -> tuple:
    b = index[0]
    s, m = (1 if b > 0 else -1), abs(b)
    if len(index) == 1:
        return ((Fraction(s), _base_kernel(m)),)
    out = {}
    for eps, E in _harmonic_pieces(index[1:]):
        W = prepend(E, int(eps), -int(eps))  # int_0^t E/(u - eps) du
        _integrate_by_parts(out, W, m, s * eps)
        if eps != 1:
            # boundary term W(1) * [S_m(s eps; N) - S_m(s; N)]
            W1 = simplify_constants(words_at_one(W))
            _add(out, s * eps, W1 * _base_kernel(m))
            _add(out, s, -W1 * _base_kernel(m))
    return tuple(sorted(((e, k) for e, k in out.items() if k), key=lambda p: -p[0]))


def to_mellin(s, w_max: int = 4) -> MellinForm:
    """Mellin-type integral representation of a harmonic sum or single S-sum."""
    if isinstance(s, Expr):
        items = list(s.items())
        if len(items) != 1 or len(items[0][0]) != 1 or items[0][1] != 1:
            raise DomainError("to_mellin takes a single sum term")
        s = items[0][0][0]
    if isinstance(s, HSum):
        if s.weight > w_max:
            raise DomainError(f"weight {s.weight} exceeds {w_max}")
        return MellinForm(_harmonic_pieces(s.index))
    if isinstance(s, SSum) and s.depth == 1:
        return MellinForm(((s.weights[0], _base_kernel(s.exps[0])),))
    raise DomainError("to_mellin supports harmonic sums and depth-1 S-sums")


# --------------------------------------------------------------------------
# differentiation in N
# --------------------------------------------------------------------------


def _tail(index: tuple, bound: str) -> Expr:
    # sum_{k > N} of the outermost summand: sigma_index - S_index(N)
    return sigma_canonical(index) - Expr.atom(HSum(index, bound))


@lru_cache(maxsize=None)
def _diff(index: tuple, bound: str) -> Expr:
    if not index:
        return Expr()
    b, A = index[0], index[1:]
    s, m = (1 if b > 0 else -1), abs(b)
    out = _tail((s * (m + 1),) + A, bound) * m
    for mon, c in _diff(A, bound).items():
        sums = [a for a in mon if isinstance(a, HSum) and a.bound == bound]
        rest = tuple(a for a in mon if not (isinstance(a, HSum) and a.bound == bound))
        T = sums[0].index if sums else ()
        out = out - Expr.mono(rest, c) * _tail((b,) + T, bound)
    return out


def diff_N(s, max_weight: int = 3) -> Expr:
    """d/dN of a harmonic sum, as sums of N and constants."""
    if isinstance(s, Expr):
        items = list(s.items())
        if len(items) != 1 or len(items[0][0]) != 1:
            raise DomainError("diff_N takes a single harmonic sum")
        s = items[0][0][0]
    if not isinstance(s, HSum) or s.is_constant:
        raise DomainError("diff_N needs a harmonic sum of finite N")
    if s.weight > max_weight:
        raise DomainError(f"weight {s.weight} exceeds {max_weight}")
    out = _diff(s.index, s.bound)
    if SIGMA0 in out.atoms():
        raise NestsumError("internal: sigma0 did not cancel in d/dN")
    return out


def diff_N_expr(e, max_weight: int = 4) -> Expr:
    """Apply d/dN (Leibniz rule) to a polynomial in harmonic sums of N."""
    e = as_expr(e)
    out = Expr()
    for mon, c in e.items():
        for i, a in enumerate(mon):
            if isinstance(a, HSum) and not a.is_constant:
                rest = mon[:i] + mon[i + 1 :]
                out = out + Expr.mono(rest, c) * diff_N(a, max_weight)
    return out
