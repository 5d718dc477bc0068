"""Multiple zeta values, theorems about them, and constants at infinite upper bound."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import mpmath
from mpmath import mp
from sympy import divisors, mobius

from .algebra import shuffle_letters, zeta_stuffle
from .boundary import sum_at_infinity_words, word_to_zeta_key, zeta_key_to_word
from .errors import DomainError
from .expr import CATALAN, LN2, PI, Const, CSum, Expr, SSum, zeta
from .numerics.evaluate import eval_expr
from .numerics.precision import as_precision
from .numerics.words import eval_word

# --------------------------------------------------------------------------
# values
# --------------------------------------------------------------------------


def check_admissible(key):
    key = tuple(int(k) for k in key)
    if not key or key[0] < 2 or any(k < 1 for k in key):
        raise DomainError(f"inadmissible zeta index {key}: needs k1 >= 2 and all k >= 1")
    return key


@lru_cache(maxsize=4096)
def _zeta_cached(key, target):
    return eval_word(zeta_key_to_word(key), 1, target)


def zeta_numeric(key, prec=None):
    """zeta_{k1,...,kr} = sum_{n1 > ... > nr} prod n_i^-k_i via the word integral at 1."""
    key = check_admissible(key)
    p = as_precision(prec)
    return _zeta_cached(key, p.target)


def zeta_direct(key, M: int, dps: int = 20):
    """sum over M >= n1 > n2 > ... > nr >= 1 of prod n_i^-k_i."""
    key = check_admissible(key)
    with mp.workdps(dps):
        # inner[n] = strict sum of the remaining levels with all indices < n
        inner = [mpmath.mpf(1)] * (M + 1)
        for k in reversed(key):
            out = [mpmath.mpf(0)] * (M + 1)
            acc = mpmath.mpf(0)
            for n in range(1, M + 1):
                out[n] = acc  # indices < n
                acc += inner[n] / mpmath.mpf(n) ** k
            inner = out
        return acc


# --------------------------------------------------------------------------
# relations
# --------------------------------------------------------------------------


def duality(key) -> tuple:
    """Dual index: reverse the word and swap 0 <-> 1."""
    w = zeta_key_to_word(check_admissible(key))
    return word_to_zeta_key(tuple(1 - l for l in reversed(w)))


@dataclass
class Relation:
    kind: str
    lhs: Expr
    rhs: Expr
    residual: float = 0.0
    ok: bool = True

    def to_json_obj(self):
        from .grammar import format_expr

        return {
            "kind": self.kind,
            "lhs": format_expr(self.lhs),
            "rhs": format_expr(self.rhs),
            "residual": self.residual,
            "ok": self.ok,
        }


@dataclass
class Report:
    name: str
    relations: list = field(default_factory=list)
    tol: float = 1e-11

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.relations)

    @property
    def max_residual(self) -> float:
        return max((r.residual for r in self.relations), default=0.0)

    def to_json_obj(self):
        return {
            "name": self.name,
            "ok": self.ok,
            "max_residual": self.max_residual,
            "relations": [r.to_json_obj() for r in self.relations],
        }


def mzv_value(e, prec=None):
    """Numeric value of an Expr in z[...] constants (and other named constants)."""
    p = as_precision(prec)
    total = mpmath.mpf(0)
    for mon, c in e.items():
        term = mpmath.mpf(c.numerator) / c.denominator
        for a in mon:
            if isinstance(a, Const) and a.name == "z":
                term *= zeta_numeric(a.key, p)
            else:
                term *= eval_expr(Expr.atom(a), None, p)
        total += term
    return total


def _relation(kind, lhs, rhs, tol, prec):
    r = float(abs(mzv_value(lhs, prec) - mzv_value(rhs, prec)))
    return Relation(kind, lhs, rhs, r, r < tol)


def zeta_shuffle(k1, k2) -> Expr:
    """zeta(k1) zeta(k2) by shuffling the words at 1."""
    out = Expr()
    for w, c in shuffle_letters(zeta_key_to_word(k1), zeta_key_to_word(k2)):
        out = out + zeta(*word_to_zeta_key(w)) * c
    return out


def admissible_indices(weight: int):
    """All admissible indices of the given weight."""
    out = []

    def rec(prefix, left):
        if left == 0:
            out.append(tuple(prefix))
            return
        lo = 2 if not prefix else 1
        for k in range(lo, left + 1):
            rec(prefix + [k], left - k)

    rec([], weight)
    return out


def check_double_shuffle(w: int, prec=None, tol: float = 1e-11) -> Report:
    """Shuffle and stuffle expansions of zeta(a) zeta(b), weight(a) + weight(b) = w."""
    p = as_precision(prec)
    rep = Report(f"double shuffle, weight {w}", tol=tol)
    for wa in range(2, w - 1):
        wb = w - wa
        if wb < wa:
            continue
        for a in admissible_indices(wa):
            for b in admissible_indices(wb):
                if wa == wb and b < a:
                    continue
                prod = zeta(*a) * zeta(*b)
                sh, st = zeta_shuffle(a, b), zeta_stuffle(a, b)
                rep.relations.append(_relation("shuffle", prod, sh, tol, p))
                rep.relations.append(_relation("stuffle", prod, st, tol, p))
                rep.relations.append(_relation("double shuffle", sh - st, Expr(), tol, p))
    return rep


def duality_check(max_weight: int = 5, prec=None, tol: float = 1e-11) -> Report:
    p = as_precision(prec)
    rep = Report("duality", tol=tol)
    for w in range(2, max_weight + 1):
        for key in admissible_indices(w):
            rep.relations.append(_relation("duality", zeta(*key), zeta(*duality(key)), tol, p))
    return rep


def compositions(n: int, k: int):
    if k == 1:
        yield (n,)
        return
    for first in range(1, n - k + 2):
        for rest in compositions(n - first, k - 1):
            yield (first,) + rest


def sum_theorem_check(n: int, k: int, prec=None, tol: float = 1e-11) -> Report:
    if not 2 <= k < n <= 7:
        raise DomainError("sum theorem check needs 2 <= k < n <= 7")
    p = as_precision(prec)
    lhs = Expr()
    for comp in compositions(n, k):
        if comp[0] > 1:
            lhs = lhs + zeta(*comp)
    rep = Report(f"sum theorem n={n} k={k}", tol=tol)
    rep.relations.append(_relation("sum theorem", lhs, zeta(n), tol, p))
    return rep


def derivation(key) -> list:
    """D(I): raise each entry by one in turn."""
    key = tuple(key)
    return [key[:j] + (key[j] + 1,) + key[j + 1 :] for j in range(len(key))]


def derivation_check(key, prec=None, tol: float = 1e-11) -> Report:
    key = check_admissible(key)
    if sum(key) + 1 > 6:
        raise DomainError("derivation check is limited to weight(D(I)) <= 6")
    p = as_precision(prec)
    lhs = Expr()
    for k in derivation(key):
        lhs = lhs + zeta(*k)
    rhs = Expr()
    for k in derivation(duality(key)):
        rhs = rhs + zeta(*duality(k))
    rep = Report(f"derivation theorem I={key}", tol=tol)
    rep.relations.append(_relation("derivation", lhs, rhs, tol, p))
    return rep


def nielsen_check(prec=None, tol: float = 1e-11) -> Report:
    """Nielsen integrals S_{n,p}(x) = H_{0^n,1^p}(x) at x = +-1."""
    p = as_precision(prec)
    rep = Report("Nielsen special values", tol=tol)
    with mp.workdps(p.work):
        cases = []
        for q in range(1, 5):
            cases.append((f"S_1,{q}(1) = z{q + 1}", eval_word((0,) + (1,) * q, 1, p), zeta_numeric((q + 1,), p)))
        # x -> -x maps H_{0,1,1}(-1) to H_{0,-1,-1}(1)
        cases.append(("S_1,2(-1) = z3/8", eval_word((0, -1, -1), 1, p), zeta_numeric((3,), p) / 8))
        cases.append(("S_2,2(1) = z2^2/10", eval_word((0, 0, 1, 1), 1, p), zeta_numeric((2,), p) ** 2 / 10))
    for name, a, b in cases:
        r = float(abs(a - b))
        rep.relations.append(Relation(name, Expr(), Expr(), r, r < tol))
    return rep


# --------------------------------------------------------------------------
# repeated arguments
# --------------------------------------------------------------------------

REPEATED_FAMILIES = ("2", "2,1", "3,1", "10")


@dataclass(frozen=True)
class RepeatedValue:
    family: str
    n: int
    implemented: object
    oracle: object
    printed: object

    @property
    def printed_matches(self) -> bool:
        return abs(self.printed - self.oracle) < 1e-12 * max(1, abs(self.oracle))


def repeated_index(family: str, n: int) -> tuple:
    if family == "2":
        return (2,) * n
    if family == "2,1":
        return (2,) + (1,) * n
    if family == "3,1":
        return (3, 1) * n
    if family == "10":
        return (10,) * n
    raise DomainError(f"unknown repeated-argument family {family!r}")


def repeated_argument(family: str, n: int, prec=None) -> RepeatedValue:
    """(implemented closed form, oracle, printed form) for a repeated-argument family."""
    if n < 1:
        raise DomainError("n must be >= 1")
    key = repeated_index(family, n)
    if sum(key) > 12:
        raise DomainError("oracle limited to weight <= 12")
    p = as_precision(prec)
    with mp.workdps(p.work):
        pi = mpmath.pi
        fac = mpmath.factorial
        if family == "2":
            impl = pi ** (2 * n) / fac(2 * n + 1)
            printed = 2 * (2 * pi) ** (2 * n) / fac(2 * n + 1) / 2
        elif family == "2,1":
            impl = printed = zeta_numeric((n + 2,), p)
        elif family == "3,1":
            impl = printed = 2 * pi ** (4 * n) / fac(4 * n + 2)
        else:
            phi = (1 + mpmath.sqrt(5)) / 2
            psi = (1 - mpmath.sqrt(5)) / 2
            bracket = 1 + phi ** (10 * n + 5) + psi ** (10 * n + 5)
            impl = 10 * (2 * pi) ** (10 * n) / fac(10 * n + 5) * bracket
            printed = 10 * (2 * pi) ** (2 * n) / fac(10 * n + 5) * bracket
        oracle = zeta_numeric(key, p)
    return RepeatedValue(family, n, +impl, +oracle, +printed)


# --------------------------------------------------------------------------
# S-sums and cyclotomic sums at infinity
# --------------------------------------------------------------------------


def _li(k):
    return Expr.atom(Const("li", (k,)))


def _ssum_table():
    half = Fraction(1, 2)
    z2, z3, ln2 = zeta(2), zeta(3), Expr.atom(LN2)
    table = {
        ((2, 1), (half, Fraction(1))): z3 - z2 * ln2 / 2,
        ((1, 1, 1), (half, Fraction(2), Fraction(1))): z2 * ln2 * Fraction(3, 2) + z3 * Fraction(7, 4),
        ((1,), (half,)): ln2,
    }
    for m in range(2, 9):
        table[((m,), (half,))] = _li(m)
    return table


SSUM_TABLE = _ssum_table()


def _ssum_pairs(idx):
    if isinstance(idx, SSum):
        return idx.exps, idx.weights
    exps, weights = idx
    return tuple(int(a) for a in exps), tuple(Fraction(x) for x in weights)


def divergence_class(exps, weights):
    """None if convergent at infinity, else a label."""
    a1, x1 = exps[0], weights[0]
    if abs(x1) > 1:
        return f"power: grows like ({x1})^N"
    if x1 == 1 and a1 == 1:
        return "sigma0: logarithmic"
    return None


def ssum_infinity(idx) -> Expr:
    """S-sum at infinity: table value when known, else the unreduced constant."""
    exps, weights = _ssum_pairs(idx)
    cls = divergence_class(exps, weights)
    if cls:
        raise DomainError(f"divergent S-sum at infinity ({cls})")
    hit = SSUM_TABLE.get((exps, weights))
    if hit is not None:
        return hit
    return Expr.atom(SSum(exps, weights, "inf"))


def ssum_infinity_value(idx, prec=None):
    """Numeric S-sum at infinity through words at 1."""
    exps, weights = _ssum_pairs(idx)
    cls = divergence_class(exps, weights)
    if cls:
        raise DomainError(f"divergent S-sum at infinity ({cls})")
    return eval_expr(sum_at_infinity_words(SSum(exps, weights, "inf")), None, prec)


def ssum_table_check(prec=None, tol: float = 1e-11) -> Report:
    p = as_precision(prec)
    rep = Report("S-sum table at infinity", tol=tol)
    for (exps, ws), e in SSUM_TABLE.items():
        atom = SSum(exps, ws, "inf")
        r = float(abs(ssum_infinity_value(atom, p) - eval_expr(e, None, p)))
        rep.relations.append(Relation("table", Expr.atom(atom), e, r, r < tol))
    return rep


def _cyc_symbolic(triple, s):
    a, b, c = triple
    if (a, b) == (1, 0):
        if s == 1:
            return zeta(c)
        if c == 1:
            return -Expr.atom(LN2)
        return zeta(c) * (Fraction(1, 2 ** (c - 1)) - 1)
    if (a, b) == (2, 1):
        if s == 1 and c >= 2:
            return zeta(c) * (1 - Fraction(1, 2**c)) - 1
        if s == -1 and c == 1:
            return Expr.atom(PI) / 4 - 1
        if s == -1 and c == 2:
            return Expr.atom(CATALAN) - 1
    return None


def _cyc_pairs(idx):
    if isinstance(idx, CSum):
        return idx.triples, idx.signs
    triples, signs = idx
    return tuple(tuple(int(v) for v in t) for t in triples), tuple(int(s) for s in signs)


def cyc_infinity(idx) -> Expr:
    """Cyclotomic sum at infinity: closed form for tabulated depth-1 cases, else the constant."""
    triples, signs = _cyc_pairs(idx)
    if signs[0] == 1 and triples[0][2] == 1:
        raise DomainError("divergent cyclotomic sum at infinity (sigma0: logarithmic)")
    if len(triples) == 1:
        hit = _cyc_symbolic(triples[0], signs[0])
        if hit is not None:
            return hit
    return Expr.atom(CSum(triples, signs, "inf"))


def cyc_infinity_value(idx, prec=None):
    """Numeric value by accelerated summation of the outer index."""
    triples, signs = _cyc_pairs(idx)
    if signs[0] == 1 and triples[0][2] == 1:
        raise DomainError("divergent cyclotomic sum at infinity (sigma0: logarithmic)")
    p = as_precision(prec)
    with mp.workdps(p.work):
        levels = list(zip(triples, signs))
        inner_cache = [mpmath.mpf(1)]  # inner_cache[k] = nested inner sum up to k

        def term(level, k):
            (a, b, c), s = level
            return mpmath.mpf(s) ** k / mpmath.mpf(a * k + b) ** c

        def inner(k):
            # non-strict nesting of the remaining levels, computed incrementally
            while len(inner_cache) <= k:
                n = len(inner_cache)
                inner_cache.append(_inner_step(n))
            return inner_cache[k]

        rest = levels[1:]
        partial = [[mpmath.mpf(0)] for _ in rest]  # running sums per level

        def _inner_step(n):
            # update running sums from the innermost level outward
            below = mpmath.mpf(1)
            for j in range(len(rest) - 1, -1, -1):
                partial[j].append(partial[j][-1] + term(rest[j], n) * below)
                below = partial[j][-1]
            return below if rest else mpmath.mpf(1)

        f = lambda k: term(levels[0], int(k)) * inner(int(k))  # noqa: E731
        return mpmath.nsum(f, [1, mpmath.inf])


# --------------------------------------------------------------------------
# dilogarithm identities
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class DilogIdentity:
    """Li2(arg) + coeff * Li2(1/9) = rhs(ln2, ln3, pi)."""

    arg: Fraction
    coeff: Fraction
    rhs: tuple  # (c_pi2, c_ln2ln3, c_ln2sq, c_ln3sq)
    label: str


RAMANUJAN_IDENTITIES = (
    DilogIdentity(Fraction(1, 3), Fraction(-1), (Fraction(1, 18), 0, 0, Fraction(-1, 6)), "Li2(1/3) - Li2(1/9)"),
    DilogIdentity(
        Fraction(-1, 2), Fraction(1, 6), (Fraction(-1, 18), 1, Fraction(-1, 2), Fraction(-1, 3)), "Li2(-1/2) + 1/6 Li2(1/9)"
    ),
    DilogIdentity(Fraction(1, 4), Fraction(1, 3), (Fraction(1, 18), 2, -2, Fraction(-2, 3)), "Li2(1/4) + 1/3 Li2(1/9)"),
    DilogIdentity(Fraction(-1, 3), Fraction(-1, 3), (Fraction(-1, 18), 0, 0, Fraction(1, 6)), "Li2(-1/3) - 1/3 Li2(1/9)"),
    # -1/2 ln^2(9/8) = -2 ln^2 3 + 6 ln2 ln3 - 9/2 ln^2 2
    DilogIdentity(Fraction(-1, 8), Fraction(1, 3), (0, 6, Fraction(-9, 2), -2), "Li2(-1/8) + 1/3 Li2(1/9)"),
)


def _q(f):
    f = Fraction(f)
    return mpmath.mpf(f.numerator) / f.denominator


def _dilog_sides(ident: DilogIdentity, coeff):
    lhs = mpmath.polylog(2, _q(ident.arg)) + _q(coeff) * mpmath.polylog(2, mpmath.mpf(1) / 9)
    l2, l3 = mpmath.log(2), mpmath.log(3)
    a, b, c, d = (_q(v) for v in ident.rhs)
    rhs = a * mpmath.pi**2 + b * l2 * l3 + c * l2**2 + d * l3**2
    return lhs, rhs


def ramanujan_dilog_check(prec=None, tol: float = 1e-12):
    """Check each identity; for failures try coefficients of Li2(1/9) from {1/6, 1/3, 1} (same sign)."""
    p = as_precision(prec)
    out = []
    with mp.workdps(p.work):
        for ident in RAMANUJAN_IDENTITIES:
            lhs, rhs = _dilog_sides(ident, ident.coeff)
            r = float(abs(lhs - rhs))
            entry = {"identity": ident.label, "lhs": float(lhs), "rhs": float(rhs), "residual": r, "ok": r < tol}
            if not entry["ok"]:
                sign = 1 if ident.coeff > 0 else -1
                variants = []
                for c in (Fraction(1, 6), Fraction(1, 3), Fraction(1)):
                    vl, vr = _dilog_sides(ident, sign * c)
                    if abs(vl - vr) < tol:
                        variants.append({"coeff": str(sign * c), "lhs": float(vl), "rhs": float(vr)})
                entry["variants"] = variants
            out.append(entry)
    return out


# --------------------------------------------------------------------------
# counting sequences
# --------------------------------------------------------------------------

COUNT_KINDS = ("padovan", "perrin", "fibonacci", "lucas", "lyndon01", "lyndon01m1")


def _linear(seeds: dict, n: int, step):
    vals = dict(seeds)
    for d in range(max(seeds) + 1, n + 1):
        vals[d] = step(vals, d)
    return vals[n]


def padovan(n: int) -> int:
    """Seeds 1, 1, 1 and P_d = P_(d-2) + P_(d-3)."""
    return _linear({1: 1, 2: 1, 3: 1}, n, lambda v, d: v[d - 2] + v[d - 3])


def perrin(n: int) -> int:
    """Seeds 0, 2, 3 and P_d = P_(d-2) + P_(d-3)."""
    return _linear({1: 0, 2: 2, 3: 3}, n, lambda v, d: v[d - 2] + v[d - 3])


def fibonacci(n: int) -> int:
    return _linear({1: 1, 2: 1}, n, lambda v, d: v[d - 1] + v[d - 2])


def lucas(n: int) -> int:
    """Seeds 1, 3, 4 and L_d = L_(d-1) + L_(d-2)."""
    return _linear({1: 1, 2: 3, 3: 4}, n, lambda v, d: v[d - 1] + v[d - 2])


def _mobius_transform(seq, w):
    total = sum(int(mobius(w // d)) * seq(d) for d in divisors(w))
    if total % w:
        raise DomainError(f"non-integral Lyndon count at w={w}")
    return total // w


def counting_sequences(kind: str, n: int) -> int:
    if n < 1:
        raise DomainError("n must be >= 1")
    table = {
        "padovan": padovan,
        "perrin": perrin,
        "fibonacci": fibonacci,
        "lucas": lucas,
        "lyndon01": lambda w: _mobius_transform(perrin, w),
        "lyndon01m1": lambda w: _mobius_transform(lucas, w),
    }
    if kind not in table:
        raise DomainError(f"unknown sequence {kind!r}; choose from {', '.join(COUNT_KINDS)}")
    return table[kind](n)
