"""Numerical iterated integrals H_w(x).

Each letter becomes a differential form: ``LOG`` for dt/t or a rational form
num(t)/den(t) with den(0) != 0.  For a word without trailing ``LOG`` the
iterated integral is a power series around 0 whose coefficients follow from
a linear recurrence; trailing ``LOG`` letters are shuffled out as powers of
ln x.  Arguments near 1 go through the reflection t -> 1 - t together with
the regularized values at 1, which are obtained by splitting the path at 1/2.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

import mpmath
from mpmath import mp

from ..errors import DomainError
from ..algebra import extract_trailing
from ..expr import make_letter
from .precision import as_precision

LOG = ("L",)
MAX_RATIO = 0.85


# --------------------------------------------------------------------------
# forms
# --------------------------------------------------------------------------


def _trim(p):
    p = list(p)
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return tuple(p)


@lru_cache(maxsize=None)
def cyclotomic_coeffs(k: int) -> tuple:
    from sympy import Symbol, cyclotomic_poly

    t = Symbol("t")
    poly = cyclotomic_poly(k, t, polys=True)
    return tuple(Fraction(int(c)) for c in reversed(poly.all_coeffs()))


@lru_cache(maxsize=None)
def letter_form(letter):
    """Form attached to a normalized letter."""
    if isinstance(letter, tuple):
        k, l = letter
        return ("R", (Fraction(0),) * l + (Fraction(1),), cyclotomic_coeffs(k))
    a = Fraction(letter)
    if a == 0:
        return LOG
    s = 1 if a > 0 else -1
    return ("R", (Fraction(1),), (abs(a), Fraction(-s)))


def _compose_one_minus(p):
    # p(1 - s) as ascending coefficients in s
    out = [Fraction(0)] * len(p)
    for i, c in enumerate(p):
        for j in range(i + 1):
            out[j] += c * math.comb(i, j) * (-1) ** j
    return _trim(out)


@lru_cache(maxsize=None)
def reflect_form(form):
    """f(1 - s) as (form, scale); a simple pole at t = 1 becomes LOG."""
    if form == LOG:
        return ("R", (Fraction(1),), (Fraction(1), Fraction(-1))), Fraction(1)
    _, num, den = form
    num2, den2 = _compose_one_minus(num), _compose_one_minus(den)
    if den2[0] == 0:
        if len(den2) == 2 and len(num2) == 1:
            return LOG, num2[0] / den2[1]
        raise DomainError("form has a non-simple pole at t = 1")
    return ("R", num2, den2), Fraction(1)


@lru_cache(maxsize=None)
def form_radius(form) -> float:
    if form == LOG:
        return math.inf
    den = form[2]
    if len(den) == 1:
        return math.inf
    if len(den) == 2:
        return abs(float(den[0] / den[1]))
    roots = mpmath.polyroots([float(c) for c in reversed(den)], maxsteps=200, extraprec=40)
    return min(abs(complex(r)) for r in roots)


def words_radius(forms) -> float:
    return min((form_radius(f) for f in forms), default=math.inf)


def letters_to_forms(letters) -> tuple:
    return tuple(letter_form(make_letter(l)) for l in letters)


def reflect_forms(forms):
    """Reflected forms (same order) and the product of their scales."""
    out, scale = [], Fraction(1)
    for f in forms:
        g, s = reflect_form(f)
        out.append(g)
        scale *= s
    return tuple(out), scale


# --------------------------------------------------------------------------
# power series
# --------------------------------------------------------------------------


def _mpq(q: Fraction):
    return mpmath.mpf(q.numerator) / q.denominator


@lru_cache(maxsize=256)
def _rat_series(form, K: int, prec: int):
    """Taylor coefficients of num/den up to t^K."""
    _, num, den = form
    with mpmath.workprec(prec):
        n = [_mpq(c) for c in num]
        d = [_mpq(c) for c in den]
        p = []
        for k in range(K + 1):
            v = n[k] if k < len(n) else mpmath.mpf(0)
            for i in range(1, min(k, len(d) - 1) + 1):
                v -= d[i] * p[k - i]
            p.append(v / d[0])
    return tuple(p)


@lru_cache(maxsize=4096)
def series_coeffs(forms: tuple, K: int, prec: int) -> tuple:
    """Coefficients c_0..c_K of H_forms(x) = sum c_k x^k (last form not LOG)."""
    f = forms[0]
    with mpmath.workprec(prec):
        zero = mpmath.mpf(0)
        if len(forms) == 1:
            p = _rat_series(f, K - 1, prec)
            return (zero,) + tuple(p[k] / (k + 1) for k in range(K))
        h = series_coeffs(forms[1:], K, prec)
        if f == LOG:
            return (zero,) + tuple(h[k] / k for k in range(1, K + 1))
        _, num, den = f
        n = [_mpq(c) for c in num]
        d = [_mpq(c) for c in den]
        g = []
        for k in range(K):
            v = zero
            for i in range(min(k, len(n) - 1) + 1):
                v += n[i] * h[k - i]
            for i in range(1, min(k, len(d) - 1) + 1):
                v -= d[i] * g[k - i]
            g.append(v / d[0])
        return (zero,) + tuple(g[k] / (k + 1) for k in range(K))


def _terms_needed(ratio: float, dps: int) -> int:
    if ratio <= 0:
        return 1
    k = math.ceil((dps + 3) * math.log(10) / -math.log(ratio)) + 10
    return max(32, -(-k // 32) * 32)


def _eval_series(forms, x, dps):
    """H_forms(x) for forms without trailing LOG, by the series around 0."""
    if not forms:
        return mpmath.mpf(1)
    if x == 0:
        return mpmath.mpf(0)
    r = abs(complex(x)) / words_radius(forms)
    if r >= 1:
        raise DomainError(f"series outside its disc of convergence (|x|/radius = {r:.3g})")
    K = _terms_needed(r, dps)
    c = series_coeffs(forms, K, mp.prec)
    acc = mpmath.mpf(0)
    for k in range(K, 0, -1):
        acc = (acc + c[k]) * x
    return acc


def eval_forms(forms, x, dps):
    """H_forms(x) with trailing LOG letters extracted as powers of ln x."""
    parts = extract_trailing(tuple(forms), LOG)
    lnx = None
    total = mpmath.mpf(0)
    for v, j, c in parts:
        term = _eval_series(v, x, dps)
        if j:
            if x == 0:
                raise DomainError("logarithmic singularity at x = 0")
            if lnx is None:
                lnx = mpmath.log(x)
            term *= lnx**j
        total += _mpq(c) * term
    return total


# --------------------------------------------------------------------------
# values at 1 and the reflected route
# --------------------------------------------------------------------------


def _can_reflect(forms) -> bool:
    try:
        reflect_forms(forms)
    except DomainError:
        return False
    # no singularity of any form on (0, 1)
    for f in forms:
        if f == LOG:
            continue
        den = f[2]
        if len(den) == 2 and 0 < den[0] / -den[1] < 1:
            return False
    return True


@lru_cache(maxsize=4096)
def _reg_at_one(forms: tuple, prec: int):
    """Shuffle-regularized H_forms(1), with H_1(1) := 0."""
    dps = mpmath.libmp.prec_to_dps(prec)
    half = mpmath.mpf(1) / 2
    total = mpmath.mpf(0)
    with mpmath.workprec(prec):
        for k in range(len(forms) + 1):
            left, right = forms[:k], forms[k:]
            refl, scale = reflect_forms(tuple(reversed(left)))
            a = eval_forms(refl, half, dps) * _mpq(scale) if left else mpmath.mpf(1)
            b = eval_forms(right, half, dps) if right else mpmath.mpf(1)
            total += a * b
    return total


def _eval_reflected(forms, x, dps):
    y = 1 - x
    total = mpmath.mpf(0)
    for k in range(len(forms) + 1):
        left, right = forms[:k], forms[k:]
        refl, scale = reflect_forms(left)
        a = eval_forms(refl, y, dps) * _mpq(scale) if left else mpmath.mpf(1)
        b = _reg_at_one(right, mp.prec) if right else mpmath.mpf(1)
        total += (-1) ** k * a * b
    return total


def _ratios(forms, x):
    ax = abs(complex(x))
    r1 = ax / words_radius(forms) if ax else 0.0
    r2 = math.inf
    if _can_reflect(forms):
        refl, _ = reflect_forms(forms)
        r2 = abs(complex(1 - x)) / words_radius(refl)
    return r1, r2


def eval_forms_any(forms, x, dps):
    if x == 1:
        return _reg_at_one(tuple(forms), mp.prec)
    r1, r2 = _ratios(forms, x)
    if min(r1, r2) > MAX_RATIO:
        raise DomainError(f"no geometrically convergent route at x = {x}")
    if r1 <= r2:
        return eval_forms(forms, x, dps)
    return _eval_reflected(tuple(forms), x, dps)


def _to_mp(x):
    if isinstance(x, Fraction):
        return _mpq(x)
    if isinstance(x, str):
        if "/" in x:
            return _mpq(Fraction(x))
        return mpmath.mpmathify(x)
    return mpmath.mpmathify(x)


def eval_word(letters, x, prec=None, regularize: bool = False):
    """H_letters(x) to ``prec`` digits.

    ``x`` may be real in [0, 1], or complex when a convergent route exists.
    At x = 1 a leading letter 1 diverges; with ``regularize=True`` the
    shuffle-regularized value (H_1(1) := 0) is returned instead of raising.
    """
    p = as_precision(prec)
    letters = tuple(make_letter(l) for l in letters)
    if not letters:
        return mpmath.mpf(1)
    forms = letters_to_forms(letters)
    with mp.workdps(p.work):
        xv = _to_mp(x)
        if isinstance(xv, mpmath.mpf) and (xv < 0 or xv > 1):
            raise DomainError(f"word argument {x} outside [0, 1]; pass a complex value to continue")
        if xv == 1 and letters[0] == 1 and not regularize:
            raise DomainError("H_w(1) diverges for a leading letter 1")
        v = eval_forms_any(forms, xv, p.work)
    return +v


def eval_word_at_one(letters, prec=None):
    return eval_word(letters, 1, prec, regularize=True)


# --------------------------------------------------------------------------
# independent oracle: nested adaptive quadrature
# --------------------------------------------------------------------------


def _form_value(form, t):
    if form == LOG:
        return 1 / t
    _, num, den = form
    return mpmath.polyval([_mpq(c) for c in reversed(num)], t) / mpmath.polyval(
        [_mpq(c) for c in reversed(den)], t
    )


def eval_word_quad(letters, x, dps: int = 20):
    """H_letters(x) by recursive tanh-sinh quadrature (slow; test oracle)."""
    letters = tuple(make_letter(l) for l in letters)
    forms = letters_to_forms(letters)
    with mp.workdps(dps):
        xv = _to_mp(x)

        def rec(fs, t):
            if not fs:
                return mpmath.mpf(1)
            if all(f == LOG for f in fs):
                return mpmath.log(t) ** len(fs) / math.factorial(len(fs))
            head, rest = fs[0], fs[1:]
            return mpmath.quad(lambda u: _form_value(head, u) * rec(rest, u), [0, t])

        return rec(forms, xv)
