import random
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

import gen
from nestsum import Const, DomainError, Expr, HSum, ResourceError, parse
from nestsum.numerics import Precision, eval_word, eval_word_quad
from nestsum.numerics.constants import eval_constant
from nestsum.numerics.evaluate import eval_expr
from nestsum.numerics.mellin import Contour, inverse_mellin, mellin_quad
from nestsum.numerics.sums import eval_expr_exact, eval_sum_complex, eval_sum_exact
from nestsum.grammar import parse_atom


def q(f):
    return mpmath.mpf(f.numerator) / f.denominator


def test_exact_examples():
    assert eval_sum_exact(HSum((1,)), 3) == Fraction(11, 6)
    assert eval_sum_exact(HSum((-2, 1, 1)), 2) == Fraction(-9, 16)
    assert eval_sum_exact(parse_atom("CS[{2,1,2,-1}](N)"), 2) == Fraction(-16, 225)


def test_resource_guard():
    with pytest.raises(ResourceError):
        eval_sum_exact(HSum((1, 1)), 6_000_000)


@given(idx=gen.hindex, n=st.integers(1, 20))
def test_oracle_recursion(idx, n):
    b, rest = idx[0], idx[1:]
    step = Fraction((1 if b > 0 or n % 2 == 0 else -1), n ** abs(b)) * (eval_sum_exact(HSum(rest), n) if rest else 1)
    assert eval_sum_exact(HSum(idx), n) - eval_sum_exact(HSum(idx), n - 1) == step


def test_word_examples():
    assert abs(eval_word((0,), Fraction(1, 2)) - mpmath.log(0.5)) < 1e-15
    li2 = eval_word((0, 1), Fraction(1, 2))
    assert abs(li2 - (mpmath.zeta(2) - mpmath.log(2) ** 2) / 2) < 1e-15
    assert abs(li2 - mpmath.mpf("0.5822405265")) < 1e-10


def test_cyclotomic_word_two_methods():
    a = eval_word(((4, 1), 0), Fraction(1, 2), 20)
    b = eval_word_quad(((4, 1), 0), Fraction(1, 2), 20)
    assert abs(a - b) < 1e-12


@given(word=gen.word01m, xs=st.sampled_from(["0.1", "0.3", "0.7", "0.95"]))
def test_word_matches_quadrature(word, xs):
    if len([l for l in word if l != 0]) > 2 or len(word) > 2:
        word = word[:2]
    assert abs(eval_word(word, Fraction(xs)) - eval_word_quad(word, Fraction(xs), 20)) < 1e-12


@given(word=gen.word01m)
def test_precision_certificate(word):
    lo = eval_word(word, Fraction(7, 10), Precision(16))
    hi = eval_word(word, Fraction(7, 10), Precision(32))
    assert abs(lo - hi) < 1e-16


def test_word_domain():
    with pytest.raises(DomainError):
        eval_word((0, 1), 2)
    with pytest.raises(DomainError):
        eval_word((1,), 1)
    assert eval_word((1,), 1, regularize=True) == 0


def test_constants():
    z2 = eval_constant(Const("z", (2,)))
    assert abs(z2 - mpmath.pi**2 / 6) < 1e-16
    l2 = mpmath.log(2)
    li3 = eval_constant(Const("li", (3,)))
    assert abs(li3 - (mpmath.mpf(7) / 8 * mpmath.zeta(3) - mpmath.zeta(2) * l2 / 2 + l2**3 / 6)) < 1e-16
    assert abs(eval_constant(Const("catalan")) - mpmath.catalan) < 1e-16
    assert abs(eval_constant(Const("catalan")) - mpmath.mpf("0.9159655942")) < 1e-10
    with pytest.raises(DomainError):
        eval_constant(Const("sigma0"))


def test_complex_sums():
    assert abs(eval_sum_complex((2,), 1) - 1) < 1e-15
    assert abs(eval_sum_complex((1,), Fraction(1, 2)) - (2 - 2 * mpmath.log(2))) < 1e-12
    N = mpmath.mpc(2.5, 1.0)
    assert abs(eval_sum_complex((3,), N) - eval_sum_complex((3,), N - 1) - N ** -3) < 1e-12
    with pytest.raises(DomainError):
        eval_sum_complex((-1,), 2.5)
    with pytest.raises(DomainError):
        eval_sum_complex((1,), -2)


@pytest.mark.parametrize("idx", [(-1,), (-2,), (-3,)])
def test_alternating_parity(idx):
    for n in (4, 5):
        par = 1 if n % 2 == 0 else -1
        assert abs(eval_sum_complex(idx, n, 20, par) - q(eval_sum_exact(HSum(idx), n))) < 1e-15


@given(idx=gen.hindex, n=st.integers(1, 8))
def test_complex_at_integers(idx, n):
    par = 1 if n % 2 == 0 else -1
    v = eval_sum_complex(idx, n, 14, par)
    assert abs(v - q(eval_sum_exact(HSum(idx), n))) < 1e-12


def test_mellin_quad_callable():
    v, _ = mellin_quad(lambda x: 1, 4)
    assert abs(v - mpmath.mpf(1) / 4) < 1e-15
    v, _ = mellin_quad(lambda x: (x**3 - 1) / (x - 1), 1)
    assert abs(v - q(Fraction(11, 6))) < 1e-10


@pytest.mark.parametrize(
    "M,f,x",
    [
        (lambda N: 1 / (N + 1), lambda x: x, 0.3),
        (lambda N: -1 / N**2, mpmath.log, 0.5),
        (lambda N: 1 / N, lambda x: 1, 0.7),
    ],
)
def test_inverse_mellin_pairs(M, f, x):
    v, err = inverse_mellin(M, x, Contour(), 10)
    assert abs(v - f(mpmath.mpf(x))) < 1e-6


@pytest.mark.parametrize(
    "M,f",
    [(lambda N: 1 / (N + 1), lambda x: x), (lambda N: -1 / N**2, mpmath.log), (lambda N: 1 / N, lambda x: 1)],
)
def test_forward_then_inverse(M, f):
    # forward quadrature agrees with the closed form on the real axis; inversion recovers f
    for N in (2, 3.5):
        assert abs(mellin_quad(f, N, prec=14)[0] - M(mpmath.mpf(N))) < 1e-12
    for x in (0.3, 0.5, 0.7):
        assert abs(inverse_mellin(M, x, Contour(), 8)[0] - f(mpmath.mpf(x))) < 1e-6


def test_inverse_refuses_distributions():
    from nestsum import NumericError

    with pytest.raises(NumericError):
        inverse_mellin(lambda N: mpmath.mpf(1), 0.5)
    with pytest.raises(DomainError):
        Contour(phi=0.5)


def test_eval_expr_mixed():
    e = parse("H[0,1](x) + z2 - S[1](N)")
    v = eval_expr(e, {"x": Fraction(1, 2), "N": 3})
    ref = mpmath.polylog(2, 0.5) + mpmath.zeta(2) - q(Fraction(11, 6))
    assert abs(v - ref) < 1e-15
    assert abs(eval_expr(parse("S[2,1](inf)")) - 2 * mpmath.zeta(3)) < 1e-15
