"""Mellin quadrature of sum representations and the inverse transform along a ray."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath
from mpmath import mp

from ..errors import DomainError, NumericError
from ..expr import HWord
from .constants import eval_constant
from .precision import as_precision
from .words import _to_mp, eval_forms_any, letters_to_forms

_WORD_CACHE: dict = {}
_CACHE_LIMIT = 400_000


@dataclass(frozen=True)
class Contour:
    """Ray C = c + z e^{i phi}, z in [0, z_max]; None means adaptive."""

    c: float = 1.5
    phi: float = 3 * math.pi / 4
    z_max: float | None = None
    nodes: int | None = None

    def __post_init__(self):
        if not math.pi / 2 < self.phi < math.pi:
            raise DomainError("contour angle must lie in (pi/2, pi)")
        if self.z_max is not None and self.z_max <= 0:
            raise DomainError("z_max must be positive")


def _word_value(letters, x, dps):
    key = (letters, x, dps)
    v = _WORD_CACHE.get(key)
    if v is None:
        if len(_WORD_CACHE) > _CACHE_LIMIT:
            _WORD_CACHE.clear()
        v = eval_forms_any(letters_to_forms(letters), x, dps)
        _WORD_CACHE[key] = v
    return v


def _compile_kernel(E, p):
    """Kernel Expr -> [(coefficient, letters or None)] with constants folded in."""
    out = []
    for mon, c in E.items():
        coeff = mpmath.mpf(c.numerator) / c.denominator
        letters = None
        for a in mon:
            if isinstance(a, HWord) and not a.is_constant:
                if letters is not None:
                    raise DomainError("kernel must be linear in words")
                letters = a.letters
            else:
                from .evaluate import eval_atom

                coeff *= eval_atom(a, None, p)
        out.append((coeff, letters))
    return out


def _kernel_value(compiled, x, dps):
    total = mpmath.mpf(0)
    for coeff, letters in compiled:
        total += coeff if letters is None else coeff * _word_value(letters, x, dps)
    return total


def _power(base, N, parity):
    # base^N for base != 0; negative bases need integer N or a parity
    if isinstance(N, int):
        return base**N
    if base < 0:
        if parity not in (1, -1):
            raise DomainError("alternating pieces at non-integer N need a parity")
        return parity * (-base) ** N
    return base**N


def _as_N(N):
    v = _to_mp(N)
    if mpmath.im(v) == 0 and mpmath.re(v) == int(mpmath.re(v)):
        return int(mpmath.re(v))
    return v


def mellin_quad(mf, N, cont: Contour | None = None, prec=None, parity=None):
    """(value, error estimate) of a MellinForm at N, or of int_0^1 x^(N-1) f(x) dx for a callable f.

    ``cont`` is accepted for interface symmetry with inverse_mellin and ignored.
    """
    p = as_precision(prec)
    with mp.workdps(p.work):
        N = _as_N(N)
        if callable(mf):
            if mpmath.re(N) <= 0:
                raise DomainError("Mellin transform needs Re(N) > 0")
            v, err = mpmath.quad(lambda x: x ** (N - 1) * mf(x), [0, 1], error=True)
            return v, err
        from .evaluate import eval_expr

        total = eval_expr(mf.constant, None, p)
        err_total = mpmath.mpf(0)
        for eps, E in mf.pieces:
            compiled = _compile_kernel(E, p)
            eps = Fraction(eps)
            epsv = mpmath.mpf(eps.numerator) / eps.denominator
            dps = p.work

            if eps == 1:

                def f(x, compiled=compiled):
                    if x == 1:
                        return mpmath.mpf(0)
                    pref = mpmath.expm1(N * mpmath.log(x)) / (x - 1)
                    return pref * _kernel_value(compiled, x, dps)

            else:

                def f(x, compiled=compiled, epsv=epsv):
                    pref = (_power(epsv * x, N, parity) - 1) / (x - 1 / epsv)
                    return pref * _kernel_value(compiled, x, dps)

            v, err = mpmath.quad(f, [0, mpmath.mpf(1) / 2, 1], error=True)
            total += v
            err_total += err
        return +total, +err_total


def mellin_sum_value(atom, N, prec=None, parity=None):
    """Harmonic sum (weight <= 4) at complex N by quadrature of its Mellin form."""
    from ..relations import to_mellin

    p = as_precision(prec)
    v, _ = mellin_quad(to_mellin(atom), N, None, p, parity)
    return v


def inverse_mellin(M, x, cont: Contour | None = None, prec=None):
    """f(x) = (1/pi) int_0^inf Im[e^{i phi} x^{-C} M(C)] dz along C = c + z e^{i phi}.

    Returns (value, error estimate). Raises NumericError when the integrand
    does not decay along the ray.
    """
    cont = cont or Contour()
    p = as_precision(prec)
    with mp.workdps(p.work):
        x = _to_mp(x)
        if not (isinstance(x, mpmath.mpf) and 0 < x < 1):
            raise DomainError("inverse Mellin transform needs x in (0, 1)")
        rot = mpmath.expj(cont.phi)
        lx = mpmath.log(x)

        def g(z):
            C = cont.c + z * rot
            return mpmath.im(rot * mpmath.exp(-C * lx) * M(C)) / mpmath.pi

        # an ordinary function has M(N) -> 0 along the ray; distributions do not
        far = [abs(M(cont.c + z * rot)) for z in (mpmath.mpf(10) ** 4, mpmath.mpf(10) ** 8)]
        if not far[1] < far[0] / 2:
            raise NumericError(
                "M(N) does not vanish for large |N|: the inverse is distribution-valued or the"
                " integrand does not vanish sufficiently fast"
            )

        def piece(a, b):
            if cont.nodes:
                return mpmath.quad(g, mpmath.linspace(a, b, max(2, cont.nodes // 16)), maxdegree=6)
            return mpmath.quad(g, [a, b])

        if cont.z_max is not None:
            total = piece(0, cont.z_max)
            tail = abs(g(cont.z_max)) * cont.z_max
            return +total, +tail
        edge, total, prev = mpmath.mpf(8), piece(0, 8), None
        tol = mpmath.mpf(10) ** (-p.target)
        for _ in range(14):
            nxt = piece(edge, 2 * edge)
            total += nxt
            edge *= 2
            if abs(nxt) < tol and abs(g(edge)) * edge < tol:
                return +total, abs(nxt) + abs(g(edge)) * edge
            if prev is not None and abs(nxt) > abs(prev) and edge > 64:
                break
            prev = nxt
        raise NumericError("inverse Mellin integrand does not vanish along the contour")
